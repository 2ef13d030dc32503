"""Built-in configurations, grid and random generators, and the F4 quartic cone."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .errors import DegenerateParameters, UnknownName, ZeroForm
from .geometry import (
    GridWitness,
    Line,
    PointConfig,
    ProjPoint,
    canonical,
    is_linear_general_position,
    lines_skew,
    sample_point,
)
from .ideals import Form
from .io import parse_config, serialize_config
from .linalg import rank

__all__ = [
    "CatalogEntry",
    "named",
    "catalog_names",
    "EQUIVALENCE_MATRIX",
    "make_grid",
    "grid_witness_from_params",
    "random_config",
    "b3_points",
    "b3_plane_quartic",
    "f4_quartic_cone",
]

# Sends Z4 to D4 and D4 to Z4.
EQUIVALENCE_MATRIX = (
    (1, 0, 0, 1),
    (1, 0, 0, -1),
    (0, 1, 1, 0),
    (0, 1, -1, 0),
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    config: PointConfig
    provenance: str
    known_facts: dict = field(default_factory=dict)


_ENTRIES = {
    "F4": ("F4.txt", "F4 root system, 24 points", {
        "size": 24, "collinear_4": 18, "max_collinear": 4, "grid": None, "ci_type": (4, 6),
    }),
    "Z1": ("Z1.txt", "F4 minus one collinear quadruple", {
        "size": 20, "grid": None, "ci_type": (4, 5),
    }),
    "Z2": ("Z2.txt", "F4 minus two collinear quadruples", {
        "size": 16, "collinear_4": 4, "grid": None, "ci_type": (4, 4),
    }),
    "D4": ("D4.txt", "D4 root system (alias Z3), 12 points", {
        "size": 12, "collinear_3": 16, "collinear_4": 0, "grid": None, "ci_type": (3, 4),
    }),
    "Z4": ("Z4.txt", "12 points projectively equivalent to D4", {
        "size": 12, "grid": None, "ci_type": (3, 4),
    }),
    "B4": ("B4.txt", "conventional B4 root directions e_i, e_i +- e_j", {
        "size": 16, "ci_type": None,
    }),
}
_ALIASES = {"Z3": "D4", "ZF4": "F4", "Z_F4": "F4"}

# sha256 of the canonical serialization of each shipped file.
_DIGESTS = {
    "F4": "565b7aef432a03ef94af8d605ba6a5842fc1e01716cba85c3849adfd9639d87d",
    "Z1": "bfdb0059b3a424bdf8935e1cca706bc718645da0d679e2f7243e3f93dd4e4a78",
    "Z2": "6e61ac02f56b665d6b11e7c6c664af443fd6f05f5569a2f60aa174dfb08ba661",
    "D4": "5be68f9d29a3dee9822ecf8677cf3f6df50b72871ad8fb9acac5c27fc2435fa9",
    "Z4": "67276d7206f3f6db55515bf15dd59cdb69805a0135139e897284d50ef143a1cc",
    "B4": "d107b68b3c9bafb60884c5b0cc307340184d03646082a87641829d3cf3d9ec91",
}


def catalog_names() -> list[str]:
    return list(_ENTRIES)


def _digest(cfg: PointConfig) -> str:
    return hashlib.sha256(serialize_config(cfg).encode()).hexdigest()


def named(name: str) -> CatalogEntry:
    key = _ALIASES.get(name, name)
    if key not in _ENTRIES:
        raise UnknownName(f"unknown configuration {name!r}; choose from {', '.join(_ENTRIES)}")
    fname, prov, facts = _ENTRIES[key]
    text = resources.files("conelab").joinpath("data").joinpath(fname).read_text(encoding="utf-8")
    cfg = parse_config(text, label=key)
    expected = _DIGESTS.get(key)
    if expected and _digest(cfg) != expected:
        raise ValueError(f"catalog file {fname} does not match its recorded digest")
    return CatalogEntry(key, cfg, prov, dict(facts))


def _distinct_ints(rng: random.Random, k: int, height: int) -> list[int]:
    if 2 * height + 1 < k:
        raise DegenerateParameters(f"cannot draw {k} distinct values at height {height}")
    return rng.sample(range(-height, height + 1), k)


def grid_witness_from_params(
    s_params: Sequence, t_params: Sequence
) -> tuple[PointConfig, GridWitness]:
    """Grid on the quadric ``x0*x3 - x1*x2 = 0`` from two lists of points of P^1.

    The point for ``(s, t)`` is ``[s0 t0, s0 t1, s1 t0, s1 t1]``.  Family A
    holds one line per ``s`` (each containing ``len(t_params)`` points).
    """
    s_params = [canonical(s) for s in s_params]
    t_params = [canonical(t) for t in t_params]
    if len(set(s_params)) != len(s_params) or len(set(t_params)) != len(t_params):
        raise DegenerateParameters("grid parameters must be distinct points of P^1")
    a, b = len(s_params), len(t_params)
    pts = [(s[0] * t[0], s[0] * t[1], s[1] * t[0], s[1] * t[1]) for s in s_params for t in t_params]
    cfg = PointConfig(pts, f"grid({a},{b})")
    fam_a = tuple(
        Line(ProjPoint((s[0], 0, s[1], 0)), ProjPoint((0, s[0], 0, s[1])), tuple(range(i * b, (i + 1) * b)))
        for i, s in enumerate(s_params)
    )
    fam_b = tuple(
        Line(ProjPoint((t[0], t[1], 0, 0)), ProjPoint((0, 0, t[0], t[1])), tuple(i * b + j for i in range(a)))
        for j, t in enumerate(t_params)
    )
    return cfg, GridWitness(a, b, fam_a, fam_b)


def _random_skew_lines(rng: random.Random, count: int, height: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    for _ in range(1000):
        lines = []
        for _ in range(count):
            p = sample_point(rng, height).coords
            q = sample_point(rng, height).coords
            lines.append((p, q))
        ls = [Line(ProjPoint(p), ProjPoint(q)) for p, q in lines]
        try:
            ok = all(lines_skew(x, y) for i, x in enumerate(ls) for y in ls[i + 1 :])
        except ZeroDivisionError:  # pragma: no cover
            ok = False
        if ok and all(ProjPoint(p) != ProjPoint(q) for p, q in lines):
            return lines
    raise DegenerateParameters("could not sample skew lines")


def _points_on_line(rng, line, k: int, height: int) -> list[tuple[int, ...]]:
    p, q = line
    pts: list[tuple[int, ...]] = []
    # [1, u] and [0, 1] parametrize every point of the line.
    params = _distinct_ints(rng, k, height)
    for u in params:
        pts.append(tuple(x + u * y for x, y in zip(p, q)))
    return pts


def make_grid(a: int, b: int, rng: random.Random | None = None, height: int = 30,
              params: tuple[Sequence, Sequence] | None = None) -> PointConfig:
    """Random (or explicitly parametrized) ``(a, b)``-grid with ``2 <= a <= b``."""
    if not 2 <= a <= b:
        raise ValueError("need 2 <= a <= b")
    if params is not None:
        cfg, _ = grid_witness_from_params(*params)
        if (len(params[0]), len(params[1])) != (a, b):
            raise ValueError("parameter counts do not match (a, b)")
        return cfg
    rng = rng or random.Random(0)
    if a >= 3:
        s = [(1, u) for u in _distinct_ints(rng, a, height)]
        t = [(1, v) for v in _distinct_ints(rng, b, height)]
        cfg, w = grid_witness_from_params(s, t)
        return cfg
    for _ in range(100):
        l1, l2 = _random_skew_lines(rng, 2, height)
        top = _points_on_line(rng, l1, b, height)
        bottom = _points_on_line(rng, l2, b, height)
        pts = [ProjPoint(p) for p in top + bottom]
        if len(set(pts)) != 2 * b:
            continue
        cfg = PointConfig(pts, f"grid(2,{b})")
        fam_a = (Line(pts[0], pts[1], tuple(range(b))), Line(pts[b], pts[b + 1], tuple(range(b, 2 * b))))
        fam_b = tuple(Line(pts[j], pts[b + j], (j, b + j)) for j in range(b))
        w = GridWitness(2, b, fam_a, fam_b)
        # A third point on some connecting line would spoil maximality.
        if w.validate(cfg) and all(
            not ln.contains(cfg[k]) for ln in fam_b for k in range(2 * b) if k not in ln.members
        ):
            return cfg
    raise DegenerateParameters("could not build a (2, b)-grid")


def _plane_points(rng, n: int, height: int) -> list[ProjPoint]:
    while True:
        basis = [sample_point(rng, height).coords for _ in range(3)]
        if rank(basis) == 3:
            break
    pts: list[ProjPoint] = []
    seen = set()
    while len(pts) < n:
        c = [rng.randint(-height, height) for _ in range(3)]
        if not any(c):
            continue
        p = ProjPoint([sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(4)])
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return pts


def random_config(kind: str, params, rng: random.Random, height: int = 30) -> PointConfig:
    """Random fixtures.

    ``kind`` is one of

    - ``"general-position"``, ``params=N``: no 3 collinear, no 4 coplanar;
    - ``"random"``, ``params=N``: N distinct random points;
    - ``"on-two-skew-lines"``, ``params=(k1, k2)`` or ``(k1, k2, extra)``;
    - ``"on-skew-lines"``, ``params=(counts, extra)``: ``counts[i]`` points on
      each of pairwise skew lines plus ``extra`` random points;
    - ``"planar"``, ``params=N``: N points of a random plane;
    - ``"on-grid-lines"``, ``params=(a, b, keep)``: ``keep`` points of a random grid.
    """
    for _ in range(200):
        if kind == "general-position":
            n = int(params)
            pts: list[ProjPoint] = []
            tries = 0
            while len(pts) < n:
                tries += 1
                if tries > 100 * n:
                    raise DegenerateParameters("general position not reached")
                cand = sample_point(rng, height, avoid=pts)
                if is_linear_general_position(PointConfig(pts + [cand]))[0]:
                    pts.append(cand)
            return PointConfig(pts, f"general({n})")
        if kind == "random":
            n = int(params)
            pts = []
            while len(pts) < n:
                pts.append(sample_point(rng, height, avoid=pts))
            return PointConfig(pts, f"random({n})")
        if kind in ("on-two-skew-lines", "on-skew-lines"):
            if kind == "on-two-skew-lines":
                counts, extra = tuple(params[:2]), (params[2] if len(params) > 2 else 0)
            else:
                counts, extra = tuple(params[0]), params[1]
            lines = _random_skew_lines(rng, len(counts), height)
            raw = [p for ln, k in zip(lines, counts) for p in _points_on_line(rng, ln, k, height)]
            pts = [ProjPoint(p) for p in raw]
            while len(pts) < len(raw) + extra:
                pts.append(sample_point(rng, height, avoid=pts))
            if len(set(pts)) != len(pts):
                continue
            cfg = PointConfig(pts, f"skew{counts}+{extra}")
            if _line_incidences_ok(cfg, lines, counts):
                return cfg
            continue
        if kind == "planar":
            return PointConfig(_plane_points(rng, int(params), height), f"planar({params})")
        if kind == "on-grid-lines":
            a, b, keep = params
            g = make_grid(a, b, rng, height)
            idx = sorted(rng.sample(range(len(g)), keep))
            return g.subset(idx, f"grid({a},{b})[{keep}]")
        raise ValueError(f"unknown kind {kind!r}")
    raise DegenerateParameters(f"could not sample a {kind} configuration")


def _line_incidences_ok(cfg: PointConfig, lines, counts) -> bool:
    """Points land on exactly their own line (no accidental extra incidences)."""
    ls = [Line(ProjPoint(p), ProjPoint(q)) for p, q in lines]
    start = 0
    for ln, k in zip(ls, counts):
        for idx, pt in enumerate(cfg.points):
            on = ln.contains(pt)
            if on != (start <= idx < start + k):
                return False
        start += k
    return True


def b3_points() -> list[tuple[int, int, int]]:
    """The 9 points of P^2 given by the B3 root directions ``e_i`` and ``e_i +- e_j``."""
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    pts += [(1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1)]
    return pts


def b3_plane_quartic(i: int, a: Sequence) -> Form:
    """Plane quartic in the three variables other than ``x_i``.

    With ``j < k < l`` the remaining indices, this is the plane quartic
    through the B3 configuration of ``P^2(x_j : x_k : x_l)`` singular of
    order 3 at ``(a_j : a_k : a_l)``, read as a cone in P^3.
    """
    if i not in range(4):
        raise ValueError("i must be 0, 1, 2 or 3")
    a = [Fraction(x) for x in a]
    j, k, l = (v for v in range(4) if v != i)
    aj, ak, al = a[j], a[k], a[l]

    def e(pj, pk, pl):
        exps = [0, 0, 0, 0]
        exps[j], exps[k], exps[l] = pj, pk, pl
        return tuple(exps)

    terms: dict[tuple[int, ...], Fraction] = {}

    def add(mono, c):
        terms[mono] = terms.get(mono, Fraction(0)) + c

    add(e(2, 1, 1), 3 * aj * (ak**2 - al**2))
    add(e(1, 2, 1), 3 * ak * (al**2 - aj**2))
    add(e(1, 1, 2), 3 * al * (aj**2 - ak**2))
    add(e(0, 3, 1), aj**3)
    add(e(0, 1, 3), -aj**3)
    add(e(1, 0, 3), ak**3)
    add(e(3, 0, 1), -ak**3)
    add(e(3, 1, 0), al**3)
    add(e(1, 3, 0), -al**3)
    f = Form.from_terms(4, 4, terms)
    if f.is_zero():
        raise ZeroForm(f"f_{i} vanishes identically for a = {tuple(a)}")
    return f


def f4_quartic_cone(Q: ProjPoint | Sequence) -> Form:
    """Quartic cone with vertex ``Q`` through the 24 points of F4.

    ``-a0 f_0 + a1 f_1 - a2 f_2 + a3 f_3`` for ``Q = (a0 : a1 : a2 : a3)``.
    """
    a = [Fraction(x) for x in Q]
    signs = (-1, 1, -1, 1)
    total = None
    for i in range(4):
        try:
            fi = b3_plane_quartic(i, a)
        except ZeroForm:
            continue
        term = fi.scale(signs[i] * a[i])
        total = term if total is None else total + term
    if total is None or total.is_zero():
        raise ZeroForm(f"the quartic cone degenerates at Q = {tuple(a)}")
    return total
