"""Report assembly and rendering (text tables, JSON, CSV)."""

from __future__ import annotations

import csv
import io
import json
from importlib import resources

from .cones import CC2Verdict, ConeReport, ProjectionCIResult
from .geometry import GridWitness, Line, PointConfig
from .ideals import HVector
from .protocol import GenericityProtocol


def new_report(cfg: PointConfig, protocol: GenericityProtocol) -> dict:
    return {
        "config": {"name": cfg.label, "size": len(cfg), "ambient_dim": cfg.ambient_dim},
        "protocol": {"seed": protocol.seed, "trials": protocol.trials, "height": protocol.height},
        "cones": None,
        "grid": None,
        "projection_ci": None,
        "h_vector": None,
        "collinear": None,
        "cc2": None,
    }


def grid_dict(w: GridWitness | None, n: int) -> dict:
    if w is None:
        return {"is_grid": False, "size": n}
    return {
        "is_grid": True,
        "a": w.a,
        "b": w.b,
        "family_a": [list(ln.members) for ln in w.family_a],
        "family_b": [list(ln.members) for ln in w.family_b],
    }


def lines_list(lines: list[Line]) -> list[list[int]]:
    return [list(ln.members) for ln in lines]


def cc2_dict(v: CC2Verdict) -> dict:
    return {
        "satisfies": v.satisfies,
        "lines": [list(ln.members) for ln in v.lines] if v.lines else None,
    }


def schema() -> dict:
    text = resources.files("conelab").joinpath("data").joinpath("report.schema.json").read_text()
    return json.loads(text)


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def cone_table_text(reports: list[ConeReport]) -> str:
    """Rows ``d``, ``dim``, ``expected`` and the unexpected markers, one column per degree."""
    w = max(7, *(len(str(r.actual_dim)) + 1 for r in reports))
    head = "d".ljust(9) + "|" + "".join(str(r.degree).rjust(w) for r in reports)
    dim = "dim".ljust(9) + "|" + "".join(str(r.actual_dim).rjust(w) for r in reports)
    exp = "expected".ljust(9) + "|" + "".join(str(r.clamped_expected).rjust(w) for r in reports)
    mark = " " * 9 + "|" + "".join(("unexp." if r.unexpected else "").rjust(w) for r in reports)
    rule = "-" * len(head)
    lines = [head, rule, dim, rule, exp, rule, mark.rstrip()]
    if any(not r.consistent for r in reports):
        lines.append("warning: sampled vertices disagree at d = "
                     + ", ".join(str(r.degree) for r in reports if not r.consistent))
    return "\n".join(lines) + "\n"


def cone_csv(reports: list[ConeReport]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["d", "actual", "expected", "clamped_expected", "unexpected", "defect", "trial_dims"])
    for r in reports:
        wr.writerow([r.degree, r.actual_dim, r.expected_dim, r.clamped_expected,
                     str(r.unexpected).lower(), r.defect, " ".join(map(str, r.trial_dims))])
    return buf.getvalue()


def projection_text(res: ProjectionCIResult, n: int) -> str:
    if res.type_pair:
        a, b = res.type_pair
        line = f"CI type ({a},{b}), certified"
    else:
        line = f"not a complete intersection for any factorization of {n} (probably-no)"
    if not res.consistent:
        line += "\nwarning: trials disagree"
    return line + "\n"


def grid_text(w: GridWitness | None, n: int) -> str:
    if w is None:
        return f"not a grid for any factorization of {n}\n"
    out = [f"({w.a},{w.b})-grid"]
    out.append("family A: " + "  ".join("{" + ",".join(map(str, ln.members)) + "}" for ln in w.family_a))
    out.append("family B: " + "  ".join("{" + ",".join(map(str, ln.members)) + "}" for ln in w.family_b))
    return "\n".join(out) + "\n"


def h_vector_text(h: HVector) -> str:
    return "h-vector: (" + ",".join(map(str, h.values)) + ")\n"


def rows_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()
