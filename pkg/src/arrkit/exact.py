"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of
such rows.  Everything here is pure and returns fresh immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]
RatMatrix = tuple  # tuple[RatVector, ...]


class DimensionMismatch(ValueError):
    pass


def as_rational(x) -> Fraction:
    """Parse ints, Fractions and strings like ``"3"`` or ``"-2/5"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vector(entries: Iterable) -> RatVector:
    return tuple(as_rational(e) for e in entries)


def matrix(rows: Iterable[Iterable]) -> RatMatrix:
    m = tuple(vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionMismatch("ragged matrix")
    return m


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(m: Sequence[Sequence]) -> tuple[RatMatrix, int]:
    """Reduced row-echelon form with zero rows dropped, and the rank."""
    rows = [list(vector(r)) for r in m]
    if not rows:
        return (), 0
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == len(rows):
            break
        sel = next((i for i in range(pivot_row, len(rows)) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        piv = rows[pivot_row][col]
        rows[pivot_row] = [x / piv for x in rows[pivot_row]]
        prow = rows[pivot_row]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivot_row += 1
    out = tuple(tuple(r) for r in rows[:pivot_row])
    return out, pivot_row


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[1]


def pivots(echelon: Sequence[Sequence]) -> list[int]:
    return [next(j for j, x in enumerate(row) if x != 0) for row in echelon]


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> RatMatrix:
    """Basis of ``{v : m v = 0}`` returned in RREF."""
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    red, _ = rref(m)
    piv = pivots(red)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return rref(basis)[0] if basis else ()


def solve(m: Sequence[Sequence], b: Sequence) -> RatVector | None:
    """One solution of ``m x = b`` or None when inconsistent."""
    if not m:
        return None
    ncols = len(m[0])
    aug = [list(vector(r)) + [as_rational(bi)] for r, bi in zip(m, b)]
    red, _ = rref(aug)
    x = [Fraction(0)] * ncols
    for row in red:
        p = next(j for j, v in enumerate(row) if v != 0)
        if p == ncols:
            return None
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> RatMatrix:
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(vector(r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, _ = rref(aug)
    if len(red) < n or any(red[i][i] != 1 for i in range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMatrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(r, c) for c in cols) for r in a)


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero > 0."""
    v = vector(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim stored by its RREF spanning basis.

    Equality of two subspaces is equality of their RREF bases, so instances
    are usable as dictionary keys.
    """

    ambient_dim: int
    basis: RatMatrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [vector(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in dimension {ambient_dim}")
        return cls(ambient_dim, rref(vs)[0] if vs else ())

    @classmethod
    def whole(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(
            tuple(Fraction(int(i == j)) for j in range(ambient_dim)) for i in range(ambient_dim)))

    @classmethod
    def kernel(cls, forms: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        """Common zero set of a family of linear forms."""
        fs = [vector(f) for f in forms]
        if not fs:
            return cls.whole(ambient_dim)
        return cls(ambient_dim, nullspace(fs, ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def annihilator(self) -> RatMatrix:
        """RREF basis of the linear forms vanishing on this subspace."""
        if not self.basis:
            return Subspace.whole(self.ambient_dim).basis
        return nullspace(self.basis, self.ambient_dim)

    def contains_vector(self, v: Sequence) -> bool:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        return all(dot(f, v) == 0 for f in self.annihilator())

    def coordinates(self, v: Sequence) -> RatVector:
        """Coordinates of ``v`` with respect to the RREF basis."""
        if not self.contains_vector(v):
            raise ValueError("vector is not in the subspace")
        piv = pivots(self.basis)
        return tuple(as_rational(v[p]) for p in piv)

    def __str__(self) -> str:
        rows = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.basis)
        return f"span[{rows}] in Q^{self.ambient_dim}"


def _check_dims(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace.kernel(list(a.annihilator()) + list(b.annihilator()), a.ambient_dim)


def sum_space(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace.span(list(a.basis) + list(b.basis), a.ambient_dim)


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` is a subset of ``a``."""
    _check_dims(a, b)
    ann = a.annihilator()
    return all(dot(f, v) == 0 for f in ann for v in b.basis)
