"""Reference computations for the built-in configurations, bundled as named checks."""

from __future__ import annotations

from typing import Callable, Iterator

from .catalog import EQUIVALENCE_MATRIX, f4_quartic_cone, named
from .cones import cone_table, projection_ci_property, sample_vertex
from .geometry import apply_transform, collinear_subsets, detect_grid
from .ideals import condition_matrix, multiplicity_at
from .linalg import mat_vec
from .protocol import GenericityProtocol

F4_TABLE = {
    "degrees": (3, 4, 5, 6, 7, 8),
    "dim": (0, 1, 3, 7, 13, 21),
    "expected": (0, 0, 0, 4, 12, 21),
    "unexpected": (4, 5, 6, 7),
}

CI_TYPES = {"F4": (4, 6), "Z1": (4, 5), "Z2": (4, 4), "D4": (3, 4), "Z4": (3, 4)}


def _f4_table(protocol):
    rows = cone_table(named("F4").config, 3, 8, protocol)
    got = (
        tuple(r.actual_dim for r in rows),
        tuple(r.clamped_expected for r in rows),
        tuple(r.degree for r in rows if r.unexpected),
    )
    want = (F4_TABLE["dim"], F4_TABLE["expected"], F4_TABLE["unexpected"])
    return got == want, f"dim={got[0]} expected={got[1]} unexpected at {got[2]}"


def _census(protocol):
    f4 = named("F4").config
    d4 = named("D4").config
    z2 = named("Z2").config
    got = (
        len(collinear_subsets(f4, 4)),
        len(collinear_subsets(f4, 5)),
        len(collinear_subsets(d4, 3)),
        len(collinear_subsets(d4, 4)),
        len(collinear_subsets(z2, 4)),
    )
    return got == (18, 0, 16, 0, 4), "F4 4-lines/5-lines, D4 3-lines/4-lines, Z2 4-lines = %s" % (got,)


def _projections(protocol):
    details = []
    ok = True
    for name, ab in CI_TYPES.items():
        res = projection_ci_property(named(name).config, protocol)
        good = res.type_pair == ab and all(tr[ab].certified for tr in res.trials)
        ok &= good
        details.append(f"{name}:{res.type_pair}")
    return ok, " ".join(details)


def _not_grids(protocol):
    found = {n: detect_grid(named(n).config) for n in CI_TYPES}
    bad = [n for n, w in found.items() if w is not None]
    return not bad, "grids found: " + (", ".join(bad) or "none")


def _equivalence(protocol):
    z3, z4 = named("D4").config, named("Z4").config
    fwd = apply_transform(z4, EQUIVALENCE_MATRIX).as_set() == z3.as_set()
    back = apply_transform(z3, EQUIVALENCE_MATRIX).as_set() == z4.as_set()
    return fwd and back, f"Z4->Z3 {fwd}, Z3->Z4 {back}"


def _quartic(protocol):
    f4 = named("F4").config
    Q = sample_vertex(f4, protocol, 0)
    f = f4_quartic_cone(Q)
    mult = multiplicity_at(f, Q.coords)
    vanish = all(f(p.coords) == 0 for p in f4)
    mat = condition_matrix(f4, 4, (Q, 4))
    in_kernel = not any(mat_vec(mat, f.coefficients))
    return mult == 4 and vanish and in_kernel, f"Q={Q} multiplicity={mult} vanishes={vanish} kernel={in_kernel}"


CHECKS: dict[str, Callable] = {
    "F4 cone table d=3..8": _f4_table,
    "collinearity censuses": _census,
    "projections are complete intersections": _projections,
    "no configuration is a grid": _not_grids,
    "Z4 and D4 are projectively equivalent": _equivalence,
    "F4 quartic cone": _quartic,
}


def run_checks(protocol: GenericityProtocol | None = None) -> Iterator[tuple[str, bool, str]]:
    protocol = protocol or GenericityProtocol()
    for name, fn in CHECKS.items():
        ok, detail = fn(protocol)
        yield name, ok, detail
