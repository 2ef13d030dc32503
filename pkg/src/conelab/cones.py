"""Unexpected cones, cone defects and the projection-to-complete-intersection property.

A "general point" is realized by seeded sampling (see
:class:`~conelab.protocol.GenericityProtocol`).  Dimensions of cone systems
are upper semicontinuous in the vertex, so the generic value is the minimum
over the sampled vertices; disagreeing trials are reported, never averaged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .errors import CenterOnSecant, Degenerate, NoFormAvailable
from .geometry import (
    Line,
    PointConfig,
    ProjPoint,
    collinear_subsets,
    exact_covers,
    is_planar,
    lines_skew,
    project,
    sample_point,
    sample_screen,
)
from .ideals import CIVerdict, fat_ideal_dim, ideal_dim, is_complete_intersection
from .protocol import GenericityProtocol, fingerprint

__all__ = [
    "ConeReport",
    "ProjectionCIResult",
    "CC2Verdict",
    "sample_vertex",
    "sample_projection",
    "cone_property",
    "cone_table",
    "cone_defect",
    "projection_ci_property",
    "classify_cc2",
    "factorizations",
]


@dataclass(frozen=True)
class ConeReport:
    degree: int
    actual_dim: int
    expected_dim: int
    clamped_expected: int
    unexpected: bool
    defect: int
    trial_dims: tuple[int, ...]
    planar: bool = False
    line_witness: tuple[tuple[int, ...], ...] | None = None

    @property
    def consistent(self) -> bool:
        return len(set(self.trial_dims)) <= 1

    def as_dict(self) -> dict:
        return {
            "d": self.degree,
            "actual": self.actual_dim,
            "expected": self.expected_dim,
            "clamped_expected": self.clamped_expected,
            "unexpected": self.unexpected,
            "defect": self.defect,
            "trial_dims": list(self.trial_dims),
        }


def sample_vertex(cfg: PointConfig, protocol: GenericityProtocol, trial: int) -> ProjPoint:
    """The vertex used in ``trial``; it depends on the points, not on the degree."""
    rng = protocol.rng("vertex", fingerprint(cfg), trial)
    return sample_point(rng, protocol.height, dim=cfg.ambient_dim, avoid=cfg.points)


def _line_witness(cfg: PointConfig, d: int) -> tuple[tuple[int, ...], ...] | None:
    """``d`` pairwise skew lines, each with at least 3 points, covering ``cfg``."""
    if d < 2 or cfg.ambient_dim != 3:
        return None
    lines = collinear_subsets(cfg, 3)
    for cover in exact_covers(len(cfg), lines, d):
        return tuple(ln.members for ln in cover)
    return None


def _report(cfg: PointConfig, d: int, dims: list[int], planar: bool) -> ConeReport:
    actual = min(dims)
    expected = ideal_dim(cfg, d) - comb(d + 2, 3)
    clamped = max(0, expected)
    return ConeReport(
        degree=d,
        actual_dim=actual,
        expected_dim=expected,
        clamped_expected=clamped,
        unexpected=actual > clamped,
        defect=actual - expected,
        trial_dims=tuple(dims),
        planar=planar,
        line_witness=_line_witness(cfg, d),
    )


def _check_input(cfg: PointConfig) -> bool:
    if cfg.ambient_dim != 3:
        raise ValueError("cone properties are defined for points of P^3")
    if len(cfg) < 4:
        raise Degenerate("at least four points are needed")
    return is_planar(cfg)


def cone_property(cfg: PointConfig, d: int, protocol: GenericityProtocol | None = None) -> ConeReport:
    """Actual versus expected dimension of degree-``d`` cones through ``cfg`` with general vertex."""
    protocol = protocol or GenericityProtocol()
    planar = _check_input(cfg)
    dims = [
        fat_ideal_dim(cfg, sample_vertex(cfg, protocol, t), d, d) for t in range(protocol.trials)
    ]
    return _report(cfg, d, dims, planar)


def cone_table(
    cfg: PointConfig, d_min: int, d_max: int, protocol: GenericityProtocol | None = None
) -> list[ConeReport]:
    protocol = protocol or GenericityProtocol()
    if d_min < 1 or d_max < d_min:
        raise ValueError("need 1 <= d_min <= d_max")
    planar = _check_input(cfg)
    vertices = [sample_vertex(cfg, protocol, t) for t in range(protocol.trials)]
    return [
        _report(cfg, d, [fat_ideal_dim(cfg, P, d, d) for P in vertices], planar)
        for d in range(d_min, d_max + 1)
    ]


def cone_defect(cfg: PointConfig, d: int, protocol: GenericityProtocol | None = None) -> int:
    return cone_property(cfg, d, protocol).defect


def factorizations(n: int, min_a: int = 2) -> list[tuple[int, int]]:
    return [(a, n // a) for a in range(min_a, n + 1) if a * a <= n and n % a == 0]


def sample_projection(
    cfg: PointConfig, protocol: GenericityProtocol, trial: int
) -> tuple[ProjPoint, list[list[int]], PointConfig]:
    """Center, screen and image for ``trial``; a bad center is resampled once."""
    rng = protocol.rng("projection", fingerprint(cfg), trial)
    last: Exception | None = None
    for _ in range(2):
        center = sample_point(rng, protocol.height, avoid=cfg.points)
        screen = sample_screen(center, rng)
        try:
            return center, screen, project(cfg, center, screen)
        except CenterOnSecant as exc:
            last = exc
    raise last


@dataclass(frozen=True)
class ProjectionCIResult:
    type_pair: tuple[int, int] | None
    trials: tuple[dict[tuple[int, int], CIVerdict], ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        sets = {frozenset(t for t, v in tr.items() if v.certified) for tr in self.trials}
        return len(sets) <= 1

    def as_dict(self) -> dict:
        return {
            "type": list(self.type_pair) if self.type_pair else None,
            "consistent": self.consistent,
            "trials": [
                {f"{a},{b}": {"certified": v.certified, "trials_used": v.trials_used}
                 for (a, b), v in tr.items()}
                for tr in self.trials
            ],
        }


def projection_ci_property(
    cfg: PointConfig,
    protocol: GenericityProtocol | None = None,
    type_hint: tuple[int, int] | None = None,
) -> ProjectionCIResult:
    """Is a general projection of ``cfg`` to a plane a complete intersection?"""
    protocol = protocol or GenericityProtocol()
    if cfg.ambient_dim != 3:
        raise ValueError("projection starts from P^3")
    if type_hint is not None:
        types = [tuple(sorted(type_hint))]
    else:
        types = factorizations(len(cfg))
    per_trial = []
    for t in range(protocol.trials):
        _, _, image = sample_projection(cfg, protocol, t)
        verdicts = {}
        for a, b in types:
            try:
                verdicts[(a, b)] = is_complete_intersection(image, a, b, protocol)
            except NoFormAvailable:
                verdicts[(a, b)] = CIVerdict((a, b), False, None, 0)
        per_trial.append(verdicts)
    found = None
    for ab in types:
        if all(tr[ab].certified for tr in per_trial):
            found = ab
            break
    return ProjectionCIResult(found, tuple(per_trial))


@dataclass(frozen=True)
class CC2Verdict:
    satisfies: bool
    lines: tuple[Line, Line] | None = None


def classify_cc2(cfg: PointConfig) -> CC2Verdict:
    """Combinatorial test: all points on two skew lines with at least three on each."""
    if cfg.ambient_dim != 3 or len(cfg) < 6:
        raise Degenerate("need at least six points of P^3")
    if is_planar(cfg):
        raise Degenerate("configuration is planar")
    n = len(cfg)
    lines = collinear_subsets(cfg, 3)
    for l1, l2 in itertools.combinations(lines, 2):
        if len(l1.members) + len(l2.members) != n:
            continue
        if set(l1.members) & set(l2.members):
            continue
        if lines_skew(l1, l2):
            return CC2Verdict(True, (l1, l2))
    return CC2Verdict(False, None)
