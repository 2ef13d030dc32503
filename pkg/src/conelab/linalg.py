"""Exact linear algebra over the rationals.

Everything here works on Python integers and :class:`fractions.Fraction`;
no floating point is ever involved.  Ranks are computed with fraction-free
(Bareiss) elimination after clearing denominators row by row, kernels with
a reduced row echelon form over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "Matrix",
    "rank",
    "kernel_basis",
    "determinant",
    "mat_vec",
    "primitive_vector",
    "sample_rational",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or int")
    return Fraction(x)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> "Matrix":
        rows = [[_as_fraction(x) for x in r] for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def stack(self, other: "Matrix") -> "Matrix":
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_o = [other.transpose().row(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols_o)
        return Matrix(self.rows, other.cols, tuple(Fraction(x) for x in out))


def _rows_of(m) -> list[list[Fraction]]:
    if isinstance(m, Matrix):
        return m.to_rows()
    return [[_as_fraction(x) for x in r] for r in m]


def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    out = []
    for r in rows:
        if all(isinstance(x, int) for x in r):
            ints = list(r)
        else:
            r = [_as_fraction(x) for x in r]
            den = lcm(*(x.denominator for x in r)) if r else 1
            ints = [int(x * den) for x in r]
        if any(ints):
            g = 0
            for x in ints:
                g = gcd(g, x)
            if g > 1:
                ints = [x // g for x in ints]
            out.append(ints)
    return out


def _bareiss_rank(a: list[list[int]], ncols: int) -> int:
    n = len(a)
    r = 0
    prev = 1
    for col in range(ncols):
        if r == n:
            break
        piv = -1
        best = None
        for i in range(r, n):
            v = a[i][col]
            if v and (best is None or abs(v) < best):
                piv, best = i, abs(v)
                if best == 1:
                    break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        p = prow[col]
        for i in range(r + 1, n):
            row = a[i]
            f = row[col]
            if f:
                a[i] = [
                    0 if j <= col else (row[j] * p - f * prow[j]) // prev
                    for j in range(ncols)
                ]
            elif p != prev:
                a[i] = [0 if j <= col else (row[j] * p) // prev for j in range(ncols)]
        prev = p
        r += 1
    return r


def rank(m) -> int:
    """Exact rank of a rational matrix.

    Accepts a :class:`Matrix` or any sequence of equal-length rows of ints
    or Fractions.
    """
    if isinstance(m, Matrix):
        ncols = m.cols
        rows = _integer_rows(m.row(i) for i in range(m.rows))
    else:
        rows = _integer_rows(m)
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return 0
    return _bareiss_rank(rows, ncols)


def determinant(m) -> Fraction:
    rows = _rows_of(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and its pivot columns."""
    a = [r for r in _integer_rows(_rows_of(m))]
    a = [[Fraction(x) for x in r] for r in a]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [x / p for x in a[r]]
        prow = a[r]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def kernel_basis(m) -> list[list[Fraction]]:
    """Basis of the right null space.

    One vector per free column of the reduced row echelon form, in increasing
    column order; each has a 1 in its free column and zeros in the other free
    columns.
    """
    if isinstance(m, Matrix):
        ncols = m.cols
    else:
        rows = list(m)
        ncols = len(rows[0]) if rows else 0
        m = rows
    red, pivots = rref(m)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def mat_vec(m, v: Sequence) -> list[Fraction]:
    rows = m.to_rows() if isinstance(m, Matrix) else m
    return [sum((_as_fraction(a) * _as_fraction(b) for a, b in zip(r, v)), Fraction(0)) for r in rows]


def primitive_vector(v: Sequence) -> list[int]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    v = [_as_fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


def sample_rational(rng: random.Random, height: int) -> Fraction:
    """Uniform integer in ``[-height, height]`` as a Fraction."""
    if height < 1:
        raise ValueError("height must be at least 1")
    return Fraction(rng.randint(-height, height))
