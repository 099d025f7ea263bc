"""Reference implementations of the integer kernels.

The compiled module ``_ckernels`` mirrors every function here with the
same signature and output order; this module is the fallback and the
ground truth for the equivalence tests.

Conventions: hyperplanes are integer normal vectors indexed ``0..n-1``;
sets of hyperplanes are bitmasks (bit ``i`` is hyperplane ``i``).
"""
from __future__ import annotations

from math import gcd


def _content_normalize(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        v = [x // g for x in v]
    for x in v:
        if x:
            if x < 0:
                v = [-y for y in v]
            break
    return v


def _reduce(rows, piv, v):
    """Residual of ``v`` modulo the echelon rows (fraction free)."""
    for row, p in zip(rows, piv):
        a = v[p]
        if a:
            b = row[p]
            g = gcd(a, b)
            fb, fa = b // g, a // g
            v = [x * fb - y * fa for x, y in zip(v, row)]
    return v


def _insert(rows, piv, v):
    """Add a nonzero residual to the echelon form, returning new lists."""
    v = _content_normalize(v)
    p = next(j for j, x in enumerate(v) if x)
    k = 0
    while k < len(piv) and piv[k] < p:
        k += 1
    return rows[:k] + [v] + rows[k:], piv[:k] + [p] + piv[k:]


def rank_of(normals, idxs) -> int:
    rows: list = []
    piv: list = []
    for i in idxs:
        v = _reduce(rows, piv, list(normals[i]))
        if any(v):
            rows, piv = _insert(rows, piv, v)
    return len(rows)


def closure_of(normals, idxs) -> tuple[int, int]:
    """Smallest flat containing the given hyperplanes: ``(mask, rank)``."""
    rows: list = []
    piv: list = []
    for i in idxs:
        v = _reduce(rows, piv, list(normals[i]))
        if any(v):
            rows, piv = _insert(rows, piv, v)
    mask = 0
    for g in range(len(normals)):
        if not any(_reduce(rows, piv, list(normals[g]))):
            mask |= 1 << g
    return mask, len(rows)


def build_flats(normals):
    """All flats of the arrangement, rank by rank.

    Returns ``(masks, ranks, bases)`` where ``bases[k]`` lists hyperplane
    indices forming a basis of the normals of flat ``k``.  Flats appear in
    order of rank and, within a rank, in order of discovery.
    """
    n = len(normals)
    masks = [0]
    ranks = [0]
    bases: list[list[int]] = [[]]
    echelon = {0: ([], [], [])}
    frontier = [0]
    r = 0
    while frontier:
        nxt = []
        for f in frontier:
            rows, piv, base = echelon.pop(f)
            covered = f
            for h in range(n):
                if covered >> h & 1:
                    continue
                # hyperplanes below h outside f cannot lie in this closure,
                # otherwise h would already be covered
                nrows, npiv = _insert(rows, piv, _reduce(rows, piv, list(normals[h])))
                clo = f | (1 << h)
                for g in range(h + 1, n):
                    if not (clo >> g & 1) and not any(_reduce(nrows, npiv, list(normals[g]))):
                        clo |= 1 << g
                covered |= clo
                if clo not in echelon:
                    echelon[clo] = (nrows, npiv, base + [h])
                    nxt.append(clo)
        r += 1
        for m in nxt:
            masks.append(m)
            ranks.append(r)
            bases.append(echelon[m][2])
        frontier = nxt
    return masks, ranks, bases


def moebius(masks, ranks):
    """Moebius values from the bottom element, flats sorted by rank."""
    mu = [0] * len(masks)
    for i, (m, r) in enumerate(zip(masks, ranks)):
        if r == 0:
            mu[i] = 1
            continue
        s = 0
        for j in range(i):
            if ranks[j] >= r:
                break
            mj = masks[j]
            if mj & m == mj:
                s += mu[j]
        mu[i] = -s
    return mu


def topes(ray_pos, ray_neg, n, start_pos):
    """Breadth-first walk of the chamber graph.

    ``ray_pos[k]``/``ray_neg[k]`` are the positive/negative supports of the
    sign vector of extreme-ray candidate ``k`` (every rank-(r-1) flat in both
    directions).  A chamber is given by the mask of hyperplanes on which it
    is positive.  Returns ``[(pos_mask, wall_mask, ray_indices), ...]`` in
    discovery order.
    """
    full = (1 << n) - 1
    nrays = len(ray_pos)
    zero = [full & ~(ray_pos[k] | ray_neg[k]) for k in range(nrays)]
    out = []
    seen = {start_pos}
    queue = [start_pos]
    head = 0
    while head < len(queue):
        t = queue[head]
        head += 1
        neg = full & ~t
        rays = [k for k in range(nrays)
                if ray_pos[k] & neg == 0 and ray_neg[k] & t == 0]
        walls = 0
        for h in range(n):
            bit = 1 << h
            acc = -1
            for k in rays:
                if zero[k] & bit:
                    acc &= zero[k]
            if acc == bit:
                walls |= bit
        out.append((t, walls, rays))
        for h in range(n):
            if walls >> h & 1:
                nt = t ^ (1 << h)
                if nt not in seen:
                    seen.add(nt)
                    queue.append(nt)
    return out
