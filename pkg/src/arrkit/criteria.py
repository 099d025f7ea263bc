"""Lattice-level predicates: modularity, supersolvability, nice partitions, free probe."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import config
from .arrangement import Arrangement, essentialize, is_generic
from .chambers import PreconditionError, find_simple_triangle, is_simplicial
from .family import simple_triangle_certificate
from .kernels import rank_of
from .lattice import CharPoly, Flat, IntersectionLattice, SizeBoundExceeded, build_lattice, charpoly


def is_modular(lat: IntersectionLattice, x: Flat) -> bool:
    """Rank identity r(x) + r(y) = r(x v y) + r(x ^ y) against every flat y."""
    for y in lat.flats:
        if lat.leq(x, y) or lat.leq(y, x):
            continue
        if x.rank + y.rank != lat.join_rank(x, y) + lat.meet(x, y).rank:
            return False
    return True


@dataclass(frozen=True)
class ModularChain:
    flats: tuple[Flat, ...]

    def to_json(self) -> list:
        return [list(f.localization_indices) for f in self.flats]


def is_supersolvable(lat: IntersectionLattice) -> ModularChain | None:
    """A maximal chain of modular flats V < X1 < ... < X_r, or None."""
    memo: dict[int, bool] = {}

    def modular(f: Flat) -> bool:
        if f.mask not in memo:
            memo[f.mask] = is_modular(lat, f)
        return memo[f.mask]

    by_rank = lat.strata()
    chain = [lat.bottom]

    def extend(k: int) -> bool:
        if k == lat.rank:
            return True
        cur = chain[-1]
        for f in by_rank[k + 1]:
            if cur.mask & f.mask == cur.mask and modular(f):
                chain.append(f)
                if extend(k + 1):
                    return True
                chain.pop()
        return False

    return ModularChain(tuple(chain)) if extend(0) else None


@dataclass(frozen=True)
class FreeProbe:
    status: str
    exponents: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {"free_probe": self.status,
                "exponents": list(self.exponents) if self.exponents is not None else None}


def _integer_roots(chp: CharPoly) -> tuple[int, ...] | None:
    """Nonnegative integer roots with multiplicity if chi splits that way."""
    coeffs = list(chp.coeffs)
    roots = []
    # roots of a split chi are nonnegative and sum to |A| = -coeffs[deg-1]
    limit = abs(coeffs[-2]) if len(coeffs) > 1 else 0
    b = 0
    while len(coeffs) > 1 and b <= limit:
        # synthetic division by (t - b)
        q = [0] * (len(coeffs) - 1)
        acc = 0
        for k in range(len(coeffs) - 1, 0, -1):
            acc = acc * b + coeffs[k]
            q[k - 1] = acc
        if acc * b + coeffs[0] == 0:
            roots.append(b)
            coeffs = q
        else:
            b += 1
    if len(coeffs) > 1:
        return None
    return tuple(roots)


def free_probe(chp: CharPoly) -> FreeProbe:
    """Necessary condition for freeness: chi splits over the nonnegative integers.

    Never asserts freeness; the positive outcome is "possibly-free".
    """
    roots = _integer_roots(chp)
    if roots is None:
        return FreeProbe("not-free", None)
    return FreeProbe("possibly-free", roots)


@dataclass(frozen=True)
class NicePartition:
    blocks: tuple[tuple[int, ...], ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def to_json(self) -> list:
        return [list(b) for b in self.blocks]


def is_nice_partition(a: Arrangement, lat: IntersectionLattice, blocks) -> bool:
    """Direct check of independence and the singleton condition."""
    if len(blocks) != lat.rank or sorted(i for b in blocks for i in b) != list(range(len(a))):
        return False
    normals = a.normals
    for k in range(1, len(blocks) + 1):
        for choice in product(*blocks[:k]):
            if rank_of(normals, list(choice)) != k:
                return False
    # any sub-selection of an independent transversal is independent, and
    # every k blocks extend to a full transversal, so the loop above suffices
    for x in lat.flats:
        if x.rank < 2:
            continue
        counts = [sum(1 for i in b if x.mask >> i & 1) for b in blocks]
        if 1 not in counts:
            return False
    return True


def find_nice_partition(a: Arrangement, lat: IntersectionLattice | None = None,
                        bound: int | None = None) -> NicePartition | None:
    """Backtracking search for a nice partition.

    Block sizes are forced to the nonzero roots of chi, so the search
    aborts at once when chi does not split.  Hyperplanes are placed in
    index order; each placement is checked for independence against every
    transversal of the other nonempty blocks, and a flat of rank >= 2 is
    checked for a singleton block once all its hyperplanes are placed.
    """
    bound = config.nice_partition_bound() if bound is None else bound
    if len(a) > bound:
        raise SizeBoundExceeded(f"{len(a)} hyperplanes exceed the nice-partition bound {bound}")
    lat = lat if lat is not None else build_lattice(a)
    roots = _integer_roots(charpoly(lat))
    if roots is None:
        return None
    sizes = sorted((b for b in roots if b > 0), reverse=True)
    if len(sizes) != lat.rank:
        return None
    n = len(a)
    normals = a.normals
    blocks: list[list[int]] = [[] for _ in sizes]
    closing: list[list[Flat]] = [[] for _ in range(n)]
    for f in lat.flats:
        if f.rank >= 2:
            closing[max(f.localization_indices)].append(f)

    def independent(h: int, k: int) -> bool:
        others = [blocks[j] for j in range(len(blocks)) if j != k and blocks[j]]
        for choice in product(*others):
            if rank_of(normals, [h, *choice]) != len(choice) + 1:
                return False
        return True

    def singleton_ok(h: int) -> bool:
        for f in closing[h]:
            if not any(sum(1 for i in b if f.mask >> i & 1) == 1 for b in blocks):
                return False
        return True

    def place(h: int) -> bool:
        if h == n:
            return True
        seen_empty: set[int] = set()
        for k, cap in enumerate(sizes):
            if len(blocks[k]) >= cap:
                continue
            if not blocks[k]:
                # empty blocks of equal size are interchangeable
                if cap in seen_empty:
                    continue
                seen_empty.add(cap)
            if not independent(h, k):
                continue
            blocks[k].append(h)
            if singleton_ok(h) and place(h + 1):
                return True
            blocks[k].pop()
        return False

    if not place(0):
        return None
    return NicePartition(tuple(tuple(b) for b in blocks))


def chain_partition(chain: ModularChain) -> NicePartition:
    """Blocks X_k minus X_(k-1) along a modular chain; nice for a supersolvable lattice."""
    blocks = []
    for lo, hi in zip(chain.flats, chain.flats[1:]):
        blocks.append(tuple(i for i in hi.localization_indices if not lo.mask >> i & 1))
    return NicePartition(tuple(blocks))


CHECKS = ("lattice", "charpoly", "supersolvable", "simplicial", "generic",
          "simple-triangle", "factored", "free-probe")


def criteria_report(a: Arrangement, checks=CHECKS) -> tuple[dict, list[str]]:
    """Run the named checks; returns (report, checks skipped by a precondition).

    Chamber-based checks run on the essentialization.  A skipped check is
    reported as null.
    """
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    report: dict = {}
    skipped: list[str] = []
    if not len(a):
        raise PreconditionError("checks need a nonempty arrangement")
    lat = build_lattice(a)
    chp = charpoly(lat)
    ess, _ = essentialize(a)
    if "lattice" in checks:
        report["lattice"] = {"rank": lat.rank, "flats": len(lat),
                             "strata": [len(s) for s in lat.strata()]}
    if "charpoly" in checks:
        report["charpoly"] = str(chp)
    if "generic" in checks:
        report["generic"] = is_generic(a)
    if "supersolvable" in checks:
        chain = is_supersolvable(lat)
        report["supersolvable"] = chain is not None
        report["modular_chain"] = chain.to_json() if chain else None
    if "free-probe" in checks:
        report.update(free_probe(chp).to_json())
    if "simplicial" in checks:
        if ess.rank > config.CHAMBER_RANK_BOUND:
            report["simplicial"] = None
            skipped.append("simplicial")
        else:
            report["simplicial"] = is_simplicial(ess)[0]
    if "factored" in checks and "supersolvable" in checks and report["supersolvable"]:
        report["factored"] = True
        report["nice_partition"] = chain_partition(chain).to_json()
    elif "factored" in checks:
        try:
            nice = find_nice_partition(a, lat)
            report["factored"] = nice is not None
            report["nice_partition"] = nice.to_json() if nice else None
        except SizeBoundExceeded:
            report["factored"] = None
            report["nice_partition"] = None
            skipped.append("factored")
    if "simple-triangle" in checks:
        if ess.rank != 3:
            report["simple_triangle"] = None
            report["simple_triangle_isotopy"] = None
            skipped.append("simple-triangle")
        else:
            w = find_simple_triangle(ess)
            report["simple_triangle"] = w.to_json() if w else None
            cert = simple_triangle_certificate(ess)
            report["simple_triangle_isotopy"] = cert.to_json() if cert else None
    return report, skipped
