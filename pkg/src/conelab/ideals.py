"""Graded pieces of ideals of points: bases, condition matrices, Hilbert functions.

All dimensions are coranks of explicit matrices over the rationals.  Columns
are always indexed by the monomials of one degree in graded-lex order with
``x0 > x1 > x2 (> x3)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NoFormAvailable, ZeroForm
from .geometry import PointConfig, ProjPoint
from .linalg import Matrix, kernel_basis, primitive_vector, rank, sample_rational
from .protocol import GenericityProtocol, fingerprint

__all__ = [
    "MonomialBasis",
    "Form",
    "HVector",
    "CIVerdict",
    "condition_matrix",
    "ideal_dim",
    "fat_ideal_dim",
    "hilbert_function",
    "h_vector",
    "is_complete_intersection",
    "residual_ci_check",
    "multiplicity_at",
    "forms_through",
]


def _exponents(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    if nvars == 1:
        return ((d,),)
    return tuple(
        (i,) + rest for i in range(d, -1, -1) for rest in _exponents(nvars - 1, d - i)
    )


@dataclass(frozen=True)
class MonomialBasis:
    num_vars: int
    degree: int

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return _basis_exponents(self.num_vars, self.degree)

    @property
    def index(self) -> dict[tuple[int, ...], int]:
        return _basis_index(self.num_vars, self.degree)

    def __len__(self):
        return comb(self.degree + self.num_vars - 1, self.num_vars - 1)

    def evaluate(self, point: Sequence) -> list:
        """Row of all monomial values at ``point``."""
        return [_mono(point, e) for e in self.exponents]


@lru_cache(maxsize=None)
def _basis_exponents(nvars: int, d: int):
    if d < 0:
        return ()
    return _exponents(nvars, d)


@lru_cache(maxsize=None)
def _basis_index(nvars: int, d: int):
    return {e: i for i, e in enumerate(_basis_exponents(nvars, d))}


def _mono(point: Sequence, e: Sequence[int]):
    return prod(c**k for c, k in zip(point, e) if k)


def _var_name(i: int) -> str:
    return f"x{i}"


@dataclass(frozen=True)
class Form:
    """Homogeneous polynomial stored as its coefficient vector."""

    basis: MonomialBasis
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != len(self.basis):
            raise ValueError("coefficient count does not match the basis")

    @classmethod
    def from_terms(cls, num_vars: int, degree: int, terms: dict) -> "Form":
        basis = MonomialBasis(num_vars, degree)
        coeffs = [Fraction(0)] * len(basis)
        for e, c in terms.items():
            e = tuple(e)
            if sum(e) != degree or len(e) != num_vars:
                raise ValueError(f"monomial {e} is not of degree {degree} in {num_vars} variables")
            coeffs[basis.index[e]] += Fraction(c)
        return cls(basis, tuple(coeffs))

    @classmethod
    def from_vector(cls, num_vars: int, degree: int, vec: Sequence) -> "Form":
        return cls(MonomialBasis(num_vars, degree), tuple(Fraction(c) for c in vec))

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def num_vars(self) -> int:
        return self.basis.num_vars

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {e: c for e, c in zip(self.basis.exponents, self.coefficients) if c}

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __call__(self, point: Sequence) -> Fraction:
        return sum(
            (c * _mono(point, e) for e, c in zip(self.basis.exponents, self.coefficients) if c),
            Fraction(0),
        )

    def derivative(self, var: int) -> "Form":
        if self.degree == 0:
            return Form(MonomialBasis(self.num_vars, 0), (Fraction(0),))
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms().items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                terms[tuple(f)] = terms.get(tuple(f), 0) + c * e[var]
        return Form.from_terms(self.num_vars, self.degree - 1, terms)

    def __mul__(self, other: "Form") -> "Form":
        if other.num_vars != self.num_vars:
            raise ValueError("forms live in different rings")
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms().items():
            for f, k in other.terms().items():
                g = tuple(a + b for a, b in zip(e, f))
                terms[g] = terms.get(g, 0) + c * k
        return Form.from_terms(self.num_vars, self.degree + other.degree, terms)

    def __add__(self, other: "Form") -> "Form":
        if other.basis != self.basis:
            raise ValueError("forms of different degree")
        return Form(self.basis, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "Form":
        return Form(self.basis, tuple(-c for c in self.coefficients))

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, k) -> "Form":
        k = Fraction(k)
        return Form(self.basis, tuple(k * c for c in self.coefficients))

    def times_monomial(self, e: Sequence[int]) -> list[Fraction]:
        """Coefficient vector of ``self * x^e`` in the basis of the product degree."""
        out_basis = MonomialBasis(self.num_vars, self.degree + sum(e))
        idx = out_basis.index
        vec = [Fraction(0)] * len(out_basis)
        for f, c in zip(self.basis.exponents, self.coefficients):
            if c:
                vec[idx[tuple(a + b for a, b in zip(f, e))]] = c
        return vec

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coefficients])

    @classmethod
    def from_json(cls, num_vars: int, degree: int, text: str) -> "Form":
        return cls.from_vector(num_vars, degree, [Fraction(s) for s in json.loads(text)])

    def __str__(self):
        parts = []
        for e, c in self.terms().items():
            mono = "*".join(
                _var_name(i) + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HVector:
    values: tuple[int, ...]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if isinstance(other, HVector):
            return self.values == other.values
        return tuple(other) == self.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"HVector{self.values}"


def _derivative_rows(basis: MonomialBasis, point: Sequence, order: int) -> list[list[int]]:
    """Rows of all partial derivatives of exact ``order`` evaluated at ``point``."""
    rows = []
    for alpha in _basis_exponents(basis.num_vars, order):
        row = []
        for beta in basis.exponents:
            if all(b >= a for a, b in zip(alpha, beta)):
                coef = prod(factorial(b) // factorial(b - a) for a, b in zip(alpha, beta))
                row.append(coef * _mono(point, [b - a for a, b in zip(alpha, beta)]))
            else:
                row.append(0)
        rows.append(row)
    return rows


def condition_matrix(
    cfg: PointConfig,
    d: int,
    fat: tuple[ProjPoint, int] | None = None,
) -> Matrix:
    """Linear conditions on degree-``d`` forms.

    One evaluation row per point of ``cfg`` and, when ``fat=(P, m)`` is given,
    one row per partial derivative of order exactly ``m - 1`` at ``P``.  By
    Euler's relation these imply the lower-order conditions, so the kernel is
    the space of forms through ``cfg`` vanishing to order ``m`` at ``P``.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    nvars = cfg.ambient_dim + 1 if len(cfg) else (len(fat[0]) if fat else 4)
    basis = MonomialBasis(nvars, d)
    rows = [basis.evaluate(p.coords) for p in cfg.points]
    if fat is not None:
        P, m = fat
        if m < 0 or m > d + 1:
            raise ValueError("multiplicity must satisfy 0 <= m <= d + 1")
        if P in cfg.as_set():
            raise ValueError("fat point must not belong to the configuration")
        if m:
            rows.extend(_derivative_rows(basis, P.coords, m - 1))
    return Matrix.from_rows(rows, cols=len(basis)) if rows else Matrix.zeros(0, len(basis))


def _num_vars(cfg: PointConfig, default: int = 4) -> int:
    return cfg.ambient_dim + 1 if len(cfg) else default


def ideal_dim(cfg: PointConfig, d: int, num_vars: int | None = None) -> int:
    """Dimension of the degree-``d`` forms vanishing on ``cfg``."""
    n = num_vars or _num_vars(cfg)
    basis = MonomialBasis(n, d)
    if not len(cfg):
        return len(basis)
    return len(basis) - rank([basis.evaluate(p.coords) for p in cfg.points])


def _vertex_chart(cfg: PointConfig, P: ProjPoint) -> tuple[int, list[tuple[int, ...]]]:
    """Coordinates of ``cfg`` after a linear change of variables sending ``P`` to a vertex.

    With ``i`` the first nonzero coordinate of ``P`` and ``A`` the identity
    with column ``i`` replaced by ``P``, a form ``f`` corresponds to
    ``g(y) = f(A y)``; ``g`` vanishes at ``A^{-1} z`` iff ``f`` vanishes at
    ``z``, and ``f`` has multiplicity ``m`` at ``P`` iff every monomial of
    ``g`` has ``y_i``-degree at most ``d - m``.
    """
    c = P.coords
    i = next(k for k, x in enumerate(c) if x)
    pts = []
    for z in cfg.points:
        zi = z.coords[i]
        pts.append(tuple(zi if j == i else c[i] * z.coords[j] - c[j] * zi for j in range(len(c))))
    return i, pts


def fat_ideal_dim(
    cfg: PointConfig, P: ProjPoint, m: int, d: int, method: str = "chart"
) -> int:
    """Dimension of degree-``d`` forms through ``cfg`` with multiplicity ``m`` at ``P``.

    ``method="derivatives"`` takes the corank of :func:`condition_matrix`
    directly.  The default ``"chart"`` computes the same number after the
    rank-preserving change of variables of :func:`_vertex_chart`, where the
    derivative conditions become the vanishing of the coefficients of the
    monomials with too high a power of the vertex variable; the resulting
    matrix has far fewer rows and much smaller entries.
    """
    if P in cfg.as_set():
        raise ValueError("fat point must not belong to the configuration")
    if m <= 0:
        return ideal_dim(cfg, d, num_vars=len(P))
    if m > d:
        return 0
    if method == "derivatives":
        mat = condition_matrix(cfg, d, (P, m))
        return mat.cols - rank(mat)
    if method != "chart":
        raise ValueError(f"unknown method {method!r}")
    i, pts = _vertex_chart(cfg, P)
    basis = MonomialBasis(len(P), d)
    cols = [e for e in basis.exponents if e[i] <= d - m]
    if not pts:
        return len(cols)
    rows = [[_mono(z, e) for e in cols] for z in pts]
    return len(cols) - rank(rows)


def hilbert_function(cfg: PointConfig, t: int) -> int:
    if t < 0:
        return 0
    if not len(cfg):
        return 0
    basis = MonomialBasis(_num_vars(cfg), t)
    return rank([basis.evaluate(p.coords) for p in cfg.points])


def h_vector(cfg: PointConfig) -> HVector:
    """First difference of the Hilbert function, trimmed after the last nonzero entry.

    The Hilbert function is evaluated degree by degree; it reaches ``|Z|`` by
    degree ``|Z| - 1`` and stays there once reached.
    """
    n = len(cfg)
    if n == 0:
        return HVector(())
    values = []
    prev = 0
    for t in range(n):
        h = hilbert_function(cfg, t)
        values.append(h - prev)
        prev = h
        if h == n:
            break
    return HVector(tuple(values))


def forms_through(cfg: PointConfig, d: int) -> list[Form]:
    """A basis (as Forms) of the degree-``d`` part of the ideal of ``cfg``."""
    n = _num_vars(cfg)
    basis = MonomialBasis(n, d)
    rows = [basis.evaluate(p.coords) for p in cfg.points]
    vecs = kernel_basis(rows) if rows else [
        [Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))
    ]
    return [Form(basis, tuple(Fraction(x) for x in v)) for v in vecs]


def multiplicity_at(f: Form, P: Sequence) -> int:
    """Largest ``m`` such that all partials of ``f`` of order below ``m`` vanish at ``P``."""
    if f.is_zero():
        raise ZeroForm("the zero form has no multiplicity")
    coords = tuple(P)
    current = [f]
    for k in range(f.degree + 1):
        if any(g(coords) for g in current):
            return k
        nxt = {}
        for g in current:
            for v in range(f.num_vars):
                h = g.derivative(v)
                nxt[h.coefficients] = h
        current = list(nxt.values())
    return f.degree + 1  # unreachable for nonzero forms


@dataclass(frozen=True)
class CIVerdict:
    type_pair: tuple[int, int]
    certified: bool
    certificate: tuple[Form, Form] | None
    trials_used: int

    @property
    def label(self) -> str:
        return "yes" if self.certified else "probably-no"

    def revalidate(self, cfg: PointConfig) -> bool:
        if not self.certified or self.certificate is None:
            return False
        F, G = self.certificate
        a, b = self.type_pair
        if (F.degree, G.degree) != (a, b):
            return False
        if any(F(p.coords) or G(p.coords) for p in cfg.points):
            return False
        return _colength_ok(F, G, len(cfg))


def _ideal_span_rank(F: Form, G: Form, t: int) -> int:
    rows = []
    for H in (F, G):
        if t >= H.degree:
            rows.extend(H.times_monomial(e) for e in _basis_exponents(H.num_vars, t - H.degree))
    return rank(rows) if rows else 0


def _colength_ok(F: Form, G: Form, length: int) -> bool:
    """``R/(F, G)`` has dimension ``length`` in degrees ``a+b-2`` and ``a+b-1``.

    If ``F`` and ``G`` had a common factor of degree ``e > 0`` the quotient
    would grow by at least ``e`` between these two degrees, so equality at
    both forces a regular sequence of colength ``a*b``.
    """
    a, b = F.degree, G.degree
    n = F.num_vars
    for t in (a + b - 2, a + b - 1):
        if t < 0:
            continue
        target = comb(t + n - 1, n - 1) - length
        if _ideal_span_rank(F, G, t) != target:
            return False
    return True


def _random_form(basis_forms: list[Form], rng, height: int) -> Form:
    while True:
        coeffs = [sample_rational(rng, height) for _ in basis_forms]
        if not any(coeffs):
            continue
        vec = [Fraction(0)] * len(basis_forms[0].coefficients)
        for k, F in zip(coeffs, basis_forms):
            if k:
                vec = [v + k * c for v, c in zip(vec, F.coefficients)]
        if any(vec):
            return Form(basis_forms[0].basis, tuple(Fraction(x) for x in primitive_vector(vec)))


def is_complete_intersection(
    cfg: PointConfig,
    a: int,
    b: int,
    protocol: GenericityProtocol | None = None,
) -> CIVerdict:
    """Certify that a planar configuration is a complete intersection of type ``(a, b)``.

    Each trial draws random forms ``F`` of degree ``a`` and ``G`` of degree
    ``b`` through the points and accepts when they cut out a scheme of length
    ``a*b``; acceptance is an exact certificate.  After ``protocol.trials``
    failures the verdict is "probably-no".
    """
    protocol = protocol or GenericityProtocol()
    if cfg.ambient_dim != 2:
        raise ValueError("complete intersections are certified for plane configurations")
    a, b = min(a, b), max(a, b)
    if a < 1:
        raise ValueError("degrees must be positive")
    if len(cfg) != a * b:
        raise DimensionMismatch(f"{len(cfg)} points cannot be a complete intersection of type ({a},{b})")
    fa = forms_through(cfg, a)
    if not fa:
        raise NoFormAvailable(f"no form of degree {a} vanishes on the configuration")
    fb = forms_through(cfg, b)
    key = fingerprint(cfg)
    for trial in range(protocol.trials):
        rng = protocol.rng("ci", key, a, b, trial)
        F = _random_form(fa, rng, protocol.height)
        G = _random_form(fb, rng, protocol.height)
        if _colength_ok(F, G, len(cfg)):
            return CIVerdict((a, b), True, (F, G), trial + 1)
    return CIVerdict((a, b), False, None, protocol.trials)


def residual_ci_check(
    cfg: PointConfig,
    subset_indices: Iterable[int],
    a: int,
    b: int,
    c: int,
    protocol: GenericityProtocol | None = None,
) -> CIVerdict:
    """Verdict for the complement of a complete-intersection subset.

    ``cfg`` should be a complete intersection of type ``(a, b)`` containing
    the subset as one of type ``(a, c)``; the complement is then tested for
    type ``(a, b - c)``.  Whether ``F`` is a minimal generator of the
    subset's ideal is not checked: the residual is certified directly.
    """
    if not 0 < c < b:
        raise ValueError("need 0 < c < b")
    rest = cfg.without(subset_indices)
    return is_complete_intersection(rest, a, b - c, protocol)
