"""Points, lines and incidence in the projective plane and projective 3-space."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import BadScreen, CenterOnSecant, Degenerate, DuplicatePoint, SingularTransform
from .linalg import Matrix, rank

__all__ = [
    "ProjPoint",
    "PointConfig",
    "Line",
    "GridWitness",
    "canonical",
    "collinear_subsets",
    "all_lines",
    "exact_covers",
    "is_linear_general_position",
    "detect_grid",
    "project",
    "apply_transform",
    "lines_skew",
    "is_planar",
    "sample_point",
    "sample_screen",
]


def canonical(coords: Sequence) -> tuple[int, ...]:
    """Coprime integer representative whose first nonzero entry is positive."""
    fr = [c if isinstance(c, (int, Fraction)) else Fraction(c) for c in coords]
    if any(isinstance(c, float) for c in coords):
        raise TypeError("floating point coordinates are not accepted")
    den = lcm(*(Fraction(c).denominator for c in fr))
    ints = [int(Fraction(c) * den) for c in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("all coordinates are zero")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple[int, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", canonical(tuple(coords)))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return "[" + ",".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class PointConfig:
    """An ordered set of distinct points in P^2 or P^3."""

    points: tuple[ProjPoint, ...]
    label: str = ""

    def __init__(self, points: Iterable, label: str = ""):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint(p) for p in points)
        if pts:
            n = len(pts[0])
            if n not in (3, 4):
                raise ValueError("points must have 3 or 4 homogeneous coordinates")
            if any(len(p) != n for p in pts):
                raise ValueError("points have differing coordinate counts")
        seen: dict[ProjPoint, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePoint(seen[p], i)
            seen[p] = i
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "label", label)

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0]) - 1 if self.points else 3

    def __len__(self):
        return len(self.points)

    def __iter__(self) -> Iterator[ProjPoint]:
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def as_set(self) -> frozenset[ProjPoint]:
        return frozenset(self.points)

    def subset(self, indices: Iterable[int], label: str | None = None) -> "PointConfig":
        return PointConfig([self.points[i] for i in indices], self.label if label is None else label)

    def without(self, indices: Iterable[int], label: str | None = None) -> "PointConfig":
        drop = set(indices)
        keep = [i for i in range(len(self)) if i not in drop]
        return self.subset(keep, label)

    def __add__(self, other: "PointConfig") -> "PointConfig":
        return PointConfig(self.points + tuple(other.points), self.label)


def _plucker(p: Sequence[int], q: Sequence[int]) -> dict[tuple[int, int], int]:
    n = len(p)
    return {(i, j): p[i] * q[j] - p[j] * q[i] for i in range(n) for j in range(i + 1, n)}


def _on_line(pl: dict[tuple[int, int], int], r: Sequence[int]) -> bool:
    n = len(r)
    for i, j, k in itertools.combinations(range(n), 3):
        if pl[i, j] * r[k] - pl[i, k] * r[j] + pl[j, k] * r[i]:
            return False
    return True


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class Line:
    """A line spanned by two points, with the configuration points lying on it."""

    p: ProjPoint
    q: ProjPoint
    members: tuple[int, ...] = ()

    @cached_property
    def _pl(self):
        return _plucker(self.p.coords, self.q.coords)

    def contains(self, r: ProjPoint) -> bool:
        return _on_line(self._pl, r.coords)

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Dual coordinates of a line in the plane (cross product of the span)."""
        if self.p.dim != 2:
            raise ValueError("dual coefficients are only defined for plane lines")
        (a0, a1, a2), (b0, b1, b2) = self.p.coords, self.q.coords
        return canonical((a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0))

    def __len__(self):
        return len(self.members)


def lines_skew(l1: Line, l2: Line) -> bool:
    if l1.p.dim != 3:
        raise ValueError("skewness is defined for lines in P^3")
    return _int_det([l1.p.coords, l1.q.coords, l2.p.coords, l2.q.coords]) != 0


def all_lines(cfg: PointConfig) -> list[Line]:
    """Every maximal collinear subset with at least two points."""
    pts = [p.coords for p in cfg.points]
    n = len(pts)
    covered: set[tuple[int, int]] = set()
    lines = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in covered:
                continue
            pl = _plucker(pts[i], pts[j])
            members = tuple(k for k in range(n) if k in (i, j) or _on_line(pl, pts[k]))
            for a, b in itertools.combinations(members, 2):
                covered.add((a, b))
            lines.append(Line(cfg.points[i], cfg.points[j], members))
    lines.sort(key=lambda ln: ln.members)
    return lines


def collinear_subsets(cfg: PointConfig, k: int = 3) -> list[Line]:
    """Maximal collinear subsets with at least ``k`` points, sorted by member indices."""
    if k < 3:
        raise ValueError("k must be at least 3")
    return [ln for ln in all_lines(cfg) if len(ln.members) >= k]


def is_linear_general_position(cfg: PointConfig) -> tuple[bool, tuple[int, ...] | None]:
    """No three points collinear and no four coplanar.

    Returns ``(True, None)`` or ``(False, witness_indices)``.
    """
    if cfg.ambient_dim != 3:
        raise ValueError("linear general position is checked in P^3")
    pts = [p.coords for p in cfg.points]
    n = len(pts)
    for i, j in itertools.combinations(range(n), 2):
        pl = _plucker(pts[i], pts[j])
        for k in range(j + 1, n):
            if _on_line(pl, pts[k]):
                return False, (i, j, k)
    for quad in itertools.combinations(range(n), 4):
        if _int_det([pts[i] for i in quad]) == 0:
            return False, quad
    return True, None


def is_planar(cfg: PointConfig) -> bool:
    """True when the points span at most a plane of P^3."""
    if cfg.ambient_dim == 2:
        return True
    return rank([p.coords for p in cfg.points]) <= 3


@dataclass(frozen=True)
class GridWitness:
    a: int
    b: int
    family_a: tuple[Line, ...]
    family_b: tuple[Line, ...]

    def validate(self, cfg: PointConfig) -> bool:
        if len(self.family_a) != self.a or len(self.family_b) != self.b:
            return False
        if len(cfg) != self.a * self.b:
            return False
        for fam in (self.family_a, self.family_b):
            for l1, l2 in itertools.combinations(fam, 2):
                if not lines_skew(l1, l2):
                    return False
        hit: set[int] = set()
        for la in self.family_a:
            for lb in self.family_b:
                common = set(la.members) & set(lb.members)
                if len(common) != 1:
                    return False
                (idx,) = common
                if not (la.contains(cfg[idx]) and lb.contains(cfg[idx])):
                    return False
                hit.add(idx)
        return hit == set(range(len(cfg)))


def exact_covers(n: int, candidates: list[Line], count: int) -> Iterator[list[Line]]:
    """Partitions of ``range(n)`` into ``count`` pairwise skew candidate lines."""
    by_point: dict[int, list[int]] = {i: [] for i in range(n)}
    for ci, ln in enumerate(candidates):
        for m in ln.members:
            by_point[m].append(ci)
    skew_cache: dict[tuple[int, int], bool] = {}

    def skew(i, j):
        key = (min(i, j), max(i, j))
        if key not in skew_cache:
            skew_cache[key] = lines_skew(candidates[i], candidates[j])
        return skew_cache[key]

    chosen: list[int] = []
    covered: set[int] = set()

    def rec():
        if len(covered) == n:
            if len(chosen) == count:
                yield [candidates[c] for c in chosen]
            return
        if len(chosen) >= count:
            return
        first = min(set(range(n)) - covered)
        for ci in by_point[first]:
            mem = candidates[ci].members
            if covered.intersection(mem):
                continue
            if not all(skew(ci, c) for c in chosen):
                continue
            chosen.append(ci)
            covered.update(mem)
            yield from rec()
            chosen.pop()
            covered.difference_update(mem)

    yield from rec()


def detect_grid(cfg: PointConfig) -> GridWitness | None:
    """Search for an (a, b)-grid structure, smallest ``a`` first."""
    if cfg.ambient_dim != 3:
        raise ValueError("grids live in P^3")
    n = len(cfg)
    if n < 4:
        raise Degenerate("grid detection needs at least four points")
    lines = all_lines(cfg)
    for a in range(2, n + 1):
        if a * a > n:
            break
        if n % a:
            continue
        b = n // a
        cand_a = [ln for ln in lines if len(ln.members) == b]
        cand_b = [ln for ln in lines if len(ln.members) == a]
        if len(cand_a) < a or len(cand_b) < b:
            continue
        for fam_a in exact_covers(n, cand_a, a):
            for fam_b in exact_covers(n, cand_b, b):
                w = GridWitness(a, b, tuple(fam_a), tuple(fam_b))
                if w.validate(cfg):
                    return w
    return None


def apply_transform(cfg: PointConfig, T) -> PointConfig:
    """Apply ``p -> T p`` to every point, keeping order."""
    rows = T.to_rows() if isinstance(T, Matrix) else [list(r) for r in T]
    n = cfg.ambient_dim + 1
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"transform must be {n}x{n}")
    if rank(rows) < n:
        raise SingularTransform("transform is not invertible")
    out = []
    for p in cfg.points:
        out.append([sum(Fraction(t) * c for t, c in zip(r, p.coords)) for r in rows])
    return PointConfig(out, cfg.label)


def project(cfg: PointConfig, center: ProjPoint, screen) -> PointConfig:
    """Image of ``cfg`` under the linear map ``screen`` (3x4) whose kernel is ``center``."""
    if cfg.ambient_dim != 3:
        raise ValueError("projection is from P^3")
    rows = screen.to_rows() if isinstance(screen, Matrix) else [list(r) for r in screen]
    if len(rows) != 3 or any(len(r) != 4 for r in rows):
        raise BadScreen("screen must be a 3x4 matrix")
    if rank(rows) != 3:
        raise BadScreen("screen must have rank 3")
    if any(sum(Fraction(x) * c for x, c in zip(r, center.coords)) for r in rows):
        raise BadScreen("screen does not annihilate the center")
    images = []
    seen: dict[tuple[int, ...], int] = {}
    for i, p in enumerate(cfg.points):
        img = [sum(Fraction(x) * c for x, c in zip(r, p.coords)) for r in rows]
        if not any(img):
            raise CenterOnSecant(f"center coincides with point {i}")
        key = canonical(img)
        if key in seen:
            raise CenterOnSecant(f"points {seen[key]} and {i} have the same image")
        seen[key] = i
        images.append(key)
    return PointConfig(images, cfg.label)


def sample_point(
    rng: random.Random, height: int, dim: int = 3, avoid: Iterable[ProjPoint] = ()
) -> ProjPoint:
    """Random point with integer coordinates in ``[-height, height]``."""
    avoid = set(avoid)
    while True:
        coords = [rng.randint(-height, height) for _ in range(dim + 1)]
        if not any(coords):
            continue
        p = ProjPoint(coords)
        if p not in avoid:
            return p


def sample_screen(center: ProjPoint, rng: random.Random, mix_height: int = 5) -> list[list[int]]:
    """A 3x4 integer matrix of rank 3 whose kernel is spanned by ``center``.

    Starts from the coordinate screen ``c_i e_j - c_j e_i`` (``c_i`` a nonzero
    coordinate) and mixes it with a random invertible 3x3 matrix, which
    amounts to choosing a random target plane.
    """
    c = center.coords
    piv = next(i for i, x in enumerate(c) if x)
    base = []
    for j in range(4):
        if j == piv:
            continue
        row = [0] * 4
        row[j] = c[piv]
        row[piv] = -c[j]
        base.append(row)
    while True:
        mix = [[rng.randint(-mix_height, mix_height) for _ in range(3)] for _ in range(3)]
        if _int_det(mix) != 0:
            break
    return [[sum(mix[i][k] * base[k][j] for k in range(3)) for j in range(4)] for i in range(3)]
