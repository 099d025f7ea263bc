"""Intersection lattices, Moebius function and characteristic polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import config, exact
from .arrangement import Arrangement, check_flat
from .exact import Subspace
from .kernels import build_flats, closure_of, moebius as _moebius, rank_of


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _mask(idxs: Iterable[int]) -> int:
    m = 0
    for i in idxs:
        m |= 1 << i
    return m


class Flat:
    """A member X of L(A), identified by its localization A_X.

    ``subspace`` and ``moebius`` are computed on first access.  Flats
    produced by an :class:`IntersectionLattice` get their Moebius value
    from the lattice; standalone flats compute it from the lattice of
    their localization, which is the interval below them.
    """

    def __init__(self, arrangement: Arrangement, mask: int, rank: int, moebius: int | None = None):
        self.arrangement = arrangement
        self.mask = mask
        self.rank = rank
        self._moebius = moebius

    @property
    def localization_indices(self) -> tuple[int, ...]:
        return _bits(self.mask)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    @property
    def dim(self) -> int:
        return self.arrangement.ambient_dim - self.rank

    @cached_property
    def subspace(self) -> Subspace:
        a = self.arrangement
        return Subspace.kernel([a[i].normal for i in self.localization_indices], a.ambient_dim)

    @property
    def moebius(self) -> int:
        if self._moebius is None:
            if self.rank == 0:
                self._moebius = 1
            else:
                loc = self.arrangement.subarrangement(self.localization_indices)
                lat = build_lattice(loc)
                self._moebius = lat.top.moebius
        return self._moebius

    def __eq__(self, other) -> bool:
        if not isinstance(other, Flat):
            return NotImplemented
        return self.arrangement is other.arrangement and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"Flat(rank={self.rank}, hyperplanes={list(self.localization_indices)})"


def flat_of(a: Arrangement, hyperplanes: Iterable[int]) -> Flat:
    """The flat cut out by the given hyperplanes, without building L(A)."""
    mask, r = closure_of(a.normals, list(hyperplanes))
    return Flat(a, mask, r)


def flat_from_subspace(a: Arrangement, sub: Subspace) -> Flat:
    loc = check_flat(a, sub)
    return Flat(a, _mask(loc), sub.codim)


class IntersectionLattice:
    """L(A) graded by rank, ordered by reverse inclusion of subspaces.

    Flats are listed by rank and, within a rank, by their sorted index
    sets, so iteration order is independent of the kernel backend.
    """

    def __init__(self, arrangement: Arrangement):
        self.arrangement = arrangement
        masks, ranks, bases = build_flats(arrangement.normals)
        order = sorted(range(len(masks)), key=lambda k: (ranks[k], _bits(masks[k])))
        masks = [masks[k] for k in order]
        ranks = [ranks[k] for k in order]
        self._bases = {masks[i]: bases[k] for i, k in enumerate(order)}
        mu = _moebius(masks, ranks)
        self.flats: list[Flat] = [Flat(arrangement, m, r, u) for m, r, u in zip(masks, ranks, mu)]
        self._by_mask = {f.mask: f for f in self.flats}
        self.rank = ranks[-1]

    def __len__(self) -> int:
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def __contains__(self, x) -> bool:
        return isinstance(x, Flat) and x.arrangement is self.arrangement and x.mask in self._by_mask

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    @property
    def top(self) -> Flat:
        return self.flats[-1]

    def stratum(self, k: int) -> list[Flat]:
        return [f for f in self.flats if f.rank == k]

    def strata(self) -> list[list[Flat]]:
        return [self.stratum(k) for k in range(self.rank + 1)]

    def by_mask(self, mask: int) -> Flat:
        return self._by_mask[mask]

    def basis(self, x: Flat) -> list[int]:
        """Indices of hyperplanes whose normals form a basis of A_X's span."""
        return self._bases[x.mask]

    def closure(self, idxs: Iterable[int]) -> Flat:
        mask, _ = closure_of(self.arrangement.normals, list(idxs))
        return self._by_mask[mask]

    def flat(self, x) -> Flat:
        """Look up a Flat, a Subspace or a set of hyperplane indices."""
        if isinstance(x, Flat):
            return self._by_mask[x.mask]
        if isinstance(x, Subspace):
            loc = check_flat(self.arrangement, x)
            return self._by_mask[_mask(loc)]
        return self.closure(x)

    def hyperplane(self, i: int) -> Flat:
        return self._by_mask[1 << i]

    def leq(self, x: Flat, y: Flat) -> bool:
        """x <= y iff y is contained in x as subspaces."""
        return x.mask & y.mask == x.mask

    def join(self, x: Flat, y: Flat) -> Flat:
        """The flat equal to the subspace intersection."""
        if x.mask & y.mask == x.mask:
            return self._by_mask[y.mask]
        if x.mask & y.mask == y.mask:
            return self._by_mask[x.mask]
        return self.closure(self._bases[x.mask] + self._bases[y.mask])

    def meet(self, x: Flat, y: Flat) -> Flat:
        """The smallest flat containing both subspaces."""
        return self._by_mask[x.mask & y.mask]

    def join_rank(self, x: Flat, y: Flat) -> int:
        return rank_of(self.arrangement.normals, self._bases[x.mask] + self._bases[y.mask])

    def interval_below(self, x: Flat) -> list[Flat]:
        return [f for f in self.flats if f.mask & x.mask == f.mask]


def build_lattice(a: Arrangement) -> IntersectionLattice:
    return IntersectionLattice(a)


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial in t; ``coeffs[k]`` multiplies ``t**k``."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_dict(cls, d: dict[int, int], degree: int) -> "CharPoly":
        return cls(tuple(d.get(k, 0) for k in range(degree + 1)))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "CharPoly":
        c = [1]
        for b in roots:
            nxt = [0] * (len(c) + 1)
            for k, x in enumerate(c):
                nxt[k + 1] += x
                nxt[k] -= b * x
            c = nxt
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def poincare(self) -> tuple[int, ...]:
        """Coefficients of (-t)^deg chi(-1/t), lowest degree first."""
        d = self.degree
        return tuple(self.coeffs[d - k] * (-1) ** k for k in range(d + 1))

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def charpoly(lat: IntersectionLattice) -> CharPoly:
    ell = lat.arrangement.ambient_dim
    d: dict[int, int] = {}
    for f in lat.flats:
        d[f.dim] = d.get(f.dim, 0) + f.moebius
    return CharPoly.from_dict(d, ell)


class SizeBoundExceeded(ValueError):
    pass


def whitney_charpoly(a: Arrangement, bound: int | None = None) -> CharPoly:
    """Subset expansion sum over S of (-1)^|S| t^(l - rank S).

    Deliberately independent of the lattice kernels: ranks come from an
    incremental Fraction elimination along a depth-first subset walk.
    """
    bound = config.whitney_bound() if bound is None else bound
    if len(a) > bound:
        raise SizeBoundExceeded(f"{len(a)} hyperplanes exceed the subset-sum bound {bound}")
    ell = a.ambient_dim
    normals = [exact.vector(v) for v in a.normals]
    d: dict[int, int] = {}

    def reduce(rows, v):
        for row, p in rows:
            if v[p] != 0:
                f = v[p] / row[p]
                v = tuple(x - f * y for x, y in zip(v, row))
        return v

    def walk(start: int, rows: list, size: int) -> None:
        dim = ell - len(rows)
        d[dim] = d.get(dim, 0) + (-1) ** size
        for i in range(start, len(normals)):
            v = reduce(rows, normals[i])
            p = next((j for j, x in enumerate(v) if x != 0), None)
            walk(i + 1, rows + [(v, p)] if p is not None else rows, size + 1)

    walk(0, [], 0)
    return CharPoly.from_dict(d, ell)


def _signatures(lat: IntersectionLattice) -> list[tuple]:
    n = len(lat.arrangement)
    sig: list[list] = [[] for _ in range(n)]
    for f in lat.flats:
        if f.rank >= 2:
            for i in f.localization_indices:
                sig[i].append((f.rank, f.size))
    return [tuple(sorted(s)) for s in sig]


def lattice_isomorphic(a: Arrangement, b: Arrangement) -> dict[int, int] | None:
    """A bijection of hyperplanes carrying flats onto flats of equal rank.

    Backtracks over hyperplanes of ``a`` in index order; candidates are
    pruned by their incidence signature and each flat of ``a`` is checked
    as soon as all its members are assigned.
    """
    if len(a) != len(b):
        return None
    la, lb = build_lattice(a), build_lattice(b)
    if sorted((f.rank, f.size) for f in la) != sorted((f.rank, f.size) for f in lb):
        return None
    sa, sb = _signatures(la), _signatures(lb)
    if sorted(sa) != sorted(sb):
        return None
    n = len(a)
    flats_b = {f.mask: f.rank for f in lb}
    closing: list[list[Flat]] = [[] for _ in range(n)]
    for f in la:
        if f.rank >= 2:
            closing[max(f.localization_indices)].append(f)
    image = [-1] * n
    used = [False] * n

    def ok(i: int) -> bool:
        for f in closing[i]:
            m = 0
            for j in f.localization_indices:
                m |= 1 << image[j]
            if flats_b.get(m) != f.rank:
                return False
        return True

    def search(i: int) -> bool:
        if i == n:
            return True
        for c in range(n):
            if used[c] or sb[c] != sa[i]:
                continue
            image[i] = c
            used[c] = True
            if ok(i) and search(i + 1):
                return True
            used[c] = False
        image[i] = -1
        return False

    if not search(0):
        return None
    return {i: image[i] for i in range(n)}


def lower_interval_isomorphic(lat: IntersectionLattice, x: Flat, other: IntersectionLattice) -> bool:
    """Whether [V, x] in ``lat`` matches ``other`` rank-by-rank as a set system."""
    loc = x.localization_indices
    pos = {i: k for k, i in enumerate(loc)}
    below = sorted(
        (f.rank, tuple(pos[i] for i in f.localization_indices)) for f in lat.interval_below(x))
    theirs = sorted((f.rank, f.localization_indices) for f in other)
    return below == theirs
