"""Chambers of real central arrangements.

Chambers are found without linear programming.  In an essential rank-r
arrangement every rank-(r-1) flat is a line, and its two directions are
the only candidates for extreme rays of chamber closures.  A chamber's
extreme rays are exactly the candidates whose sign vectors conform to the
chamber's sign vector, and H is a wall iff the rays lying on H have no
other hyperplane in common (the face they span is then all of H).  A
breadth-first walk across walls visits every chamber because the chamber
graph is connected.

A pointed full-dimensional cone in R^r is simplicial iff it has exactly r
facets, so simpliciality is decided by counting walls.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import config, exact
from .arrangement import Arrangement, ArrangementError
from .lattice import Flat, IntersectionLattice, build_lattice, charpoly
from .kernels import topes


class PreconditionError(ArrangementError):
    """Input violates a documented precondition (rank, essentiality, ...)."""


@dataclass(frozen=True)
class ChamberCone:
    sign_vector: tuple[int, ...]
    walls: frozenset[int]
    extreme_ray_flats: tuple[Flat, ...]
    rays: tuple[tuple[int, ...], ...]

    @property
    def signs(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.sign_vector)

    def interior_point(self) -> tuple[int, ...]:
        """Sum of the extreme rays, which lies in the open cone."""
        dim = len(self.rays[0])
        return tuple(sum(r[j] for r in self.rays) for j in range(dim))


@dataclass(frozen=True)
class TriangleWitness:
    chamber: ChamberCone
    vertex_flats: tuple[Flat, Flat, Flat]

    def to_json(self) -> dict:
        return {
            "sign_vector": self.chamber.signs,
            "walls": sorted(self.chamber.walls),
            "vertices": [list(f.localization_indices) for f in self.vertex_flats],
            "rays": [[str(x) for x in r] for r in self.chamber.rays],
        }


def _require_essential(a: Arrangement, max_rank: int | None = None) -> int:
    r = a.rank
    if len(a) == 0 or r != a.ambient_dim:
        raise PreconditionError("chamber computations need an essential arrangement; essentialize first")
    bound = config.CHAMBER_RANK_BOUND if max_rank is None else max_rank
    if r > bound:
        raise PreconditionError(f"rank {r} exceeds the chamber enumeration bound {bound}")
    return r


def _generic_point(a: Arrangement) -> tuple[int, ...]:
    # a nonzero form vanishes at (1, m, m^2, ...) for fewer than dim values of m
    m = 2
    while True:
        v = tuple(m ** k for k in range(a.ambient_dim))
        if all(exact.dot(h.normal, v) != 0 for h in a):
            return v
        m += 1


def _sign_masks(a: Arrangement, v) -> tuple[int, int]:
    pos = neg = 0
    for i, h in enumerate(a):
        s = sum(x * y for x, y in zip(h.normal, v))
        if s > 0:
            pos |= 1 << i
        elif s < 0:
            neg |= 1 << i
    return pos, neg


def _line_direction(a: Arrangement, f: Flat) -> tuple[int, ...]:
    basis = exact.nullspace([a[i].normal for i in f.localization_indices], a.ambient_dim)
    assert len(basis) == 1
    return exact.primitive_integer(basis[0])


def _chambers(a: Arrangement, lat: IntersectionLattice) -> list[ChamberCone]:
    r = lat.rank
    n = len(a)
    if r == 1:
        # essential rank 1: a single point in a line
        bottom = lat.bottom
        return sorted(
            [ChamberCone((1,), frozenset({0}), (bottom,), ((1,),)),
             ChamberCone((-1,), frozenset({0}), (bottom,), ((-1,),))],
            key=lambda c: ["+" if s > 0 else "-" for s in c.sign_vector])
    lines = lat.stratum(r - 1)
    ray_vecs, ray_flats, ray_pos, ray_neg = [], [], [], []
    for f in lines:
        u = _line_direction(a, f)
        p, q = _sign_masks(a, u)
        for vec, pm, nm in ((u, p, q), (tuple(-x for x in u), q, p)):
            ray_vecs.append(vec)
            ray_flats.append(f)
            ray_pos.append(pm)
            ray_neg.append(nm)
    start, _ = _sign_masks(a, _generic_point(a))
    out = []
    for pos, walls, rays in topes(ray_pos, ray_neg, n, start):
        out.append(ChamberCone(
            tuple(1 if pos >> i & 1 else -1 for i in range(n)),
            frozenset(i for i in range(n) if walls >> i & 1),
            tuple(ray_flats[k] for k in rays),
            tuple(ray_vecs[k] for k in rays),
        ))
    out.sort(key=lambda c: c.signs)
    return out


def enumerate_chambers(a: Arrangement, lat: IntersectionLattice | None = None) -> list[ChamberCone]:
    """All chambers, sorted by sign vector with ``+`` before ``-``."""
    _require_essential(a)
    return _chambers(a, lat if lat is not None else build_lattice(a))


def zaslavsky_count(a: Arrangement, lat: IntersectionLattice | None = None) -> int:
    """Number of chambers as |chi(A, -1)|."""
    return abs(charpoly(lat if lat is not None else build_lattice(a))(-1))


def is_simplicial(a: Arrangement, lat: IntersectionLattice | None = None) -> tuple[bool, ChamberCone | None]:
    r = _require_essential(a)
    for c in enumerate_chambers(a, lat):
        if len(c.walls) != r:
            return False, c
    return True, None


def find_simple_triangle(a: Arrangement, lat: IntersectionLattice | None = None) -> TriangleWitness | None:
    """A triangular chamber whose three vertices are double points.

    Chambers come in antipodal pairs; the witness with the smallest sign
    vector is returned.
    """
    if a.ambient_dim != 3 or len(a) == 0 or a.rank != 3:
        raise PreconditionError("simple-triangle search needs an essential rank-3 arrangement")
    lat = lat if lat is not None else build_lattice(a)
    for c in _chambers(a, lat):
        if len(c.walls) == 3 and all(f.size == 2 for f in c.extreme_ray_flats):
            assert len(c.extreme_ray_flats) == 3
            return TriangleWitness(c, tuple(c.extreme_ray_flats))
    return None


def is_realizable_wall(a: Arrangement, c: ChamberCone, h: int) -> bool:
    """Exact check that the face of ``c`` on hyperplane ``h`` is (r-1)-dimensional."""
    face_rays = [v for v in c.rays if exact.dot(a[h].normal, v) == 0]
    if not face_rays:
        return False
    q = [sum((Fraction(v[j]) for v in face_rays), Fraction(0)) for j in range(a.ambient_dim)]
    for i, hp in enumerate(a):
        val = exact.dot(hp.normal, q)
        if i == h:
            if val != 0:
                return False
        elif (val > 0) != (c.sign_vector[i] > 0) or val == 0:
            return False
    return exact.rank(face_rays) == a.ambient_dim - 1
