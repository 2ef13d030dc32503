"""Command line interface: ``conelab <command> <source> [options]``.

``source`` is a catalog name (F4, D4/Z3, Z1, Z2, Z4, B4) or a path to a
point configuration file.  Exit status: 0 on success, 2 on input errors,
3 when ``--strict`` is given and sampled trials disagree (or a reference
check fails).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report as rp
from .reference import run_checks
from .catalog import catalog_names, named
from .cones import classify_cc2, cone_property, cone_table, projection_ci_property
from .errors import ConelabError, Degenerate, DuplicatePoint, ParseError, UnknownName
from .geometry import PointConfig, collinear_subsets, detect_grid
from .ideals import h_vector
from .io import load_config, serialize_config
from .protocol import GenericityProtocol

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 2, 3

COMMANDS = ("analyze", "hilbert", "grid", "project", "collinear", "cc2", "defect", "catalog", "verify-appendix")


@dataclass
class AnalysisRequest:
    command: str
    source: str | None = None
    dmin: int = 1
    dmax: int = 8
    seed: int = 42
    trials: int = 3
    height: int = 1000
    fmt: str = "text"
    type_hint: tuple[int, int] | None = None
    strict: bool = False
    k: int = 3
    degree: int = 4

    def __post_init__(self):
        if self.dmax < self.dmin:
            raise ValueError("empty degree range")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    @property
    def protocol(self) -> GenericityProtocol:
        return GenericityProtocol(self.seed, self.trials, self.height)


def resolve_source(source: str) -> PointConfig:
    path = Path(source)
    if path.exists():
        return load_config(path)
    return named(source).config


def _type_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected a,b") from None
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--trials", type=int, default=3)
    common.add_argument("--height", type=int, default=1000)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--strict", action="store_true", help="exit 3 if sampled trials disagree")

    parser = argparse.ArgumentParser(prog="conelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="cone table over a degree range")
    p.add_argument("source")
    p.add_argument("--dmin", type=int, default=1)
    p.add_argument("--dmax", type=int, default=8)

    for name, helptext in (("hilbert", "h-vector"), ("grid", "grid detection"), ("cc2", "C(2) classification")):
        q = sub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("source")

    p = sub.add_parser("project", parents=[common], help="is a general projection a complete intersection")
    p.add_argument("source")
    p.add_argument("--type", dest="type_hint", type=_type_pair, default=None)

    p = sub.add_parser("collinear", parents=[common], help="maximal collinear subsets")
    p.add_argument("source")
    p.add_argument("-k", type=int, default=3)

    p = sub.add_parser("defect", parents=[common], help="unexpected cone defect at one degree")
    p.add_argument("source")
    p.add_argument("-d", "--degree", type=int, default=4)

    sub.add_parser("catalog", parents=[common], help="list or print built-in configurations").add_argument(
        "source", nargs="?"
    )
    sub.add_parser("verify-appendix", parents=[common], help="rerun the F4/D4/Z1/Z2/Z4 computations")
    return parser


def run(req: AnalysisRequest, out=None) -> int:
    out = out or sys.stdout
    protocol = req.protocol
    if req.command == "verify-appendix":
        return _verify(protocol, req, out)
    if req.command == "catalog":
        return _catalog(req, out)

    cfg = resolve_source(req.source)
    rep = rp.new_report(cfg, protocol)
    inconsistent = False

    if req.command in ("analyze", "defect"):
        if req.command == "analyze":
            rows = cone_table(cfg, req.dmin, req.dmax, protocol)
        else:
            rows = [cone_property(cfg, req.degree, protocol)]
        inconsistent = any(not r.consistent for r in rows)
        rep["cones"] = [r.as_dict() for r in rows]
        if req.fmt == "text":
            if req.command == "analyze":
                text = rp.cone_table_text(rows)
            else:
                r = rows[0]
                text = f"defect at d={r.degree}: {r.defect} (actual {r.actual_dim}, expected {r.expected_dim})\n"
        else:
            text = rp.cone_csv(rows)
    elif req.command == "hilbert":
        h = h_vector(cfg)
        rep["h_vector"] = list(h.values)
        text = rp.h_vector_text(h) if req.fmt == "text" else rp.rows_csv(
            ["i", "delta_h"], [[i, v] for i, v in enumerate(h.values)])
    elif req.command == "grid":
        w = detect_grid(cfg)
        rep["grid"] = rp.grid_dict(w, len(cfg))
        text = rp.grid_text(w, len(cfg)) if req.fmt == "text" else rp.rows_csv(
            ["is_grid", "a", "b"], [[w is not None, w.a if w else "", w.b if w else ""]])
    elif req.command == "project":
        res = projection_ci_property(cfg, protocol, req.type_hint)
        inconsistent = not res.consistent
        rep["projection_ci"] = res.as_dict()
        t = res.type_pair
        text = rp.projection_text(res, len(cfg)) if req.fmt == "text" else rp.rows_csv(
            ["certified", "a", "b", "consistent"],
            [[t is not None, t[0] if t else "", t[1] if t else "", res.consistent]])
    elif req.command == "collinear":
        lines = collinear_subsets(cfg, req.k)
        rep["collinear"] = rp.lines_list(lines)
        if req.fmt == "text":
            text = f"{len(lines)} maximal collinear subsets with at least {req.k} points\n" + "".join(
                "  {" + ",".join(map(str, ln.members)) + "}\n" for ln in lines)
        else:
            text = rp.rows_csv(["size", "members"], [[len(ln), " ".join(map(str, ln.members))] for ln in lines])
    elif req.command == "cc2":
        v = classify_cc2(cfg)
        rep["cc2"] = rp.cc2_dict(v)
        if req.fmt == "text":
            text = ("satisfies C(2): points on skew lines " + " and ".join(
                "{" + ",".join(map(str, ln.members)) + "}" for ln in v.lines) + "\n") if v.satisfies else "not C(2)\n"
        else:
            text = rp.rows_csv(["satisfies"], [[v.satisfies]])
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(req.command)

    out.write(rp.to_json(rep) if req.fmt == "json" else text)
    if inconsistent and req.strict:
        print("trial disagreement", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def _catalog(req: AnalysisRequest, out) -> int:
    if req.source:
        entry = named(req.source)
        out.write(serialize_config(entry.config, header=f"{entry.name}: {entry.provenance}"))
        return EXIT_OK
    for name in catalog_names():
        entry = named(name)
        out.write(f"{name:4s} {len(entry.config):3d} points  {entry.provenance}\n")
    return EXIT_OK


def _verify(protocol: GenericityProtocol, req: AnalysisRequest, out) -> int:
    results = list(run_checks(protocol))
    if req.fmt == "json":
        import json

        out.write(json.dumps([{"check": n, "pass": ok, "detail": d} for n, ok, d in results], indent=2) + "\n")
    else:
        for name, ok, detail in results:
            out.write(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}\n")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_INCONSISTENT


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        req = AnalysisRequest(
            command=args.command,
            source=getattr(args, "source", None),
            dmin=getattr(args, "dmin", 1),
            dmax=getattr(args, "dmax", 8),
            seed=args.seed,
            trials=args.trials,
            height=args.height,
            fmt=args.fmt,
            type_hint=getattr(args, "type_hint", None),
            strict=args.strict,
            k=getattr(args, "k", 3),
            degree=getattr(args, "degree", 4),
        )
        return run(req)
    except (ParseError, DuplicatePoint, UnknownName, ValueError, Degenerate) as exc:
        print(f"conelab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConelabError as exc:
        print(f"conelab: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
