# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the integer kernels in ``_pure``.

Masks are 64-bit, so arrangements with more than 64 hyperplanes are
rejected with ValueError.  Arithmetic is int64 with explicit overflow
checks; an overflow raises OverflowError and the dispatcher reruns the
call on the pure-Python path.  Output order matches ``_pure`` exactly.
"""
from cpython.array cimport array, clone
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    bint __builtin_mul_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_sub_overflow(long long a, long long b, long long *res) nogil

cdef array _QTEMPLATE = array('q', [])


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _reduce(const long long *rows, const long long *piv, int k, int d,
                 long long *v) noexcept nogil:
    """Reduce v in place; return 1 on overflow."""
    cdef int i, j
    cdef long long a, b, g, fa, fb, x, y
    for i in range(k):
        a = v[piv[i]]
        if a == 0:
            continue
        b = rows[i * d + piv[i]]
        g = _gcd(a, b)
        fb = b // g
        fa = a // g
        for j in range(d):
            if __builtin_mul_overflow(v[j], fb, &x):
                return 1
            if __builtin_mul_overflow(rows[i * d + j], fa, &y):
                return 1
            if __builtin_sub_overflow(x, y, &v[j]):
                return 1
        g = 0
        for j in range(d):
            g = _gcd(g, v[j])
        if g > 1:
            for j in range(d):
                v[j] = v[j] // g
    return 0


cdef inline bint _is_zero(const long long *v, int d) noexcept nogil:
    cdef int j
    for j in range(d):
        if v[j] != 0:
            return False
    return True


cdef class _Echelon:
    cdef array rows
    cdef array piv
    cdef int k
    cdef list base


cdef _Echelon _extend(_Echelon e, long long *v, int d, int h):
    """New echelon form with the nonzero residual v added."""
    cdef _Echelon out = _Echelon.__new__(_Echelon)
    cdef int j, p = 0, pos = 0, i, g = 0
    cdef long long s
    for j in range(d):
        g = _gcd(g, v[j])
    while v[p] == 0:
        p += 1
    s = -1 if v[p] < 0 else 1
    if g > 1 or s < 0:
        for j in range(d):
            v[j] = (v[j] // g) * s
    while pos < e.k and e.piv.data.as_longlongs[pos] < p:
        pos += 1
    out.k = e.k + 1
    out.rows = clone(_QTEMPLATE, out.k * d, False)
    out.piv = clone(_QTEMPLATE, out.k, False)
    for i in range(out.k):
        if i < pos:
            src = i
        elif i == pos:
            for j in range(d):
                out.rows.data.as_longlongs[i * d + j] = v[j]
            out.piv.data.as_longlongs[i] = p
            continue
        else:
            src = i - 1
        for j in range(d):
            out.rows.data.as_longlongs[i * d + j] = e.rows.data.as_longlongs[src * d + j]
        out.piv.data.as_longlongs[i] = e.piv.data.as_longlongs[src]
    out.base = e.base + [h]
    return out


cdef long long *_load(normals, int *n_out, int *d_out) except NULL:
    cdef int n = len(normals)
    cdef int d = len(normals[0]) if n else 1
    cdef int i, j
    cdef long long *buf = <long long *> malloc(max(n, 1) * d * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            row = normals[i]
            for j in range(d):
                buf[i * d + j] = row[j]
    except OverflowError:
        free(buf)
        raise
    n_out[0] = n
    d_out[0] = d
    return buf


def rank_of(normals, idxs):
    cdef int n, d, j
    cdef long long *nm = _load(normals, &n, &d)
    cdef long long *v = <long long *> malloc(d * sizeof(long long))
    cdef _Echelon e = _Echelon.__new__(_Echelon)
    e.k = 0
    e.rows = clone(_QTEMPLATE, 0, False)
    e.piv = clone(_QTEMPLATE, 0, False)
    e.base = []
    try:
        for i in idxs:
            for j in range(d):
                v[j] = nm[<int> i * d + j]
            if _reduce(e.rows.data.as_longlongs, e.piv.data.as_longlongs, e.k, d, v):
                raise OverflowError("int64 overflow in elimination")
            if not _is_zero(v, d):
                e = _extend(e, v, d, i)
        return e.k
    finally:
        free(v)
        free(nm)


def closure_of(normals, idxs):
    cdef int n, d, j, g
    cdef long long *nm = _load(normals, &n, &d)
    cdef long long *v = <long long *> malloc(d * sizeof(long long))
    cdef _Echelon e = _Echelon.__new__(_Echelon)
    e.k = 0
    e.rows = clone(_QTEMPLATE, 0, False)
    e.piv = clone(_QTEMPLATE, 0, False)
    e.base = []
    mask = 0
    try:
        for i in idxs:
            for j in range(d):
                v[j] = nm[<int> i * d + j]
            if _reduce(e.rows.data.as_longlongs, e.piv.data.as_longlongs, e.k, d, v):
                raise OverflowError("int64 overflow in elimination")
            if not _is_zero(v, d):
                e = _extend(e, v, d, i)
        for g in range(n):
            for j in range(d):
                v[j] = nm[g * d + j]
            if _reduce(e.rows.data.as_longlongs, e.piv.data.as_longlongs, e.k, d, v):
                raise OverflowError("int64 overflow in elimination")
            if _is_zero(v, d):
                mask |= (<object> 1) << g
        return mask, e.k
    finally:
        free(v)
        free(nm)


def build_flats(normals):
    cdef int n, d, h, g, j, r = 0
    if len(normals) > 64:
        raise ValueError("compiled kernel supports at most 64 hyperplanes")
    cdef long long *nm = _load(normals, &n, &d)
    cdef long long *v = <long long *> malloc(d * sizeof(long long))
    cdef uint64_t f, covered, clo, one = 1
    cdef _Echelon e, ne
    cdef dict echelon = {}
    e = _Echelon.__new__(_Echelon)
    e.k = 0
    e.rows = clone(_QTEMPLATE, 0, False)
    e.piv = clone(_QTEMPLATE, 0, False)
    e.base = []
    echelon[0] = e
    masks = [0]
    ranks = [0]
    bases = [[]]
    frontier = [0]
    try:
        while frontier:
            nxt = []
            for fm in frontier:
                f = fm
                e = echelon.pop(fm)
                covered = f
                for h in range(n):
                    if (covered >> h) & 1:
                        continue
                    for j in range(d):
                        v[j] = nm[h * d + j]
                    if _reduce(e.rows.data.as_longlongs, e.piv.data.as_longlongs, e.k, d, v):
                        raise OverflowError("int64 overflow in elimination")
                    ne = _extend(e, v, d, h)
                    clo = f | (one << h)
                    for g in range(h + 1, n):
                        if (clo >> g) & 1:
                            continue
                        for j in range(d):
                            v[j] = nm[g * d + j]
                        if _reduce(ne.rows.data.as_longlongs, ne.piv.data.as_longlongs, ne.k, d, v):
                            raise OverflowError("int64 overflow in elimination")
                        if _is_zero(v, d):
                            clo |= one << g
                    covered |= clo
                    key = clo
                    if key not in echelon:
                        echelon[key] = ne
                        nxt.append(key)
            r += 1
            for m in nxt:
                masks.append(m)
                ranks.append(r)
                bases.append((<_Echelon> echelon[m]).base)
            frontier = nxt
        return masks, ranks, bases
    finally:
        free(v)
        free(nm)


def moebius(masks, ranks):
    cdef Py_ssize_t N = len(masks), i, j
    if N and max(masks) >> 64:
        raise ValueError("compiled kernel supports at most 64 hyperplanes")
    cdef uint64_t *m = <uint64_t *> malloc(max(N, 1) * sizeof(uint64_t))
    cdef int *rk = <int *> malloc(max(N, 1) * sizeof(int))
    cdef long long *mu = <long long *> malloc(max(N, 1) * sizeof(long long))
    cdef long long s
    cdef uint64_t mi, mj
    try:
        for i in range(N):
            m[i] = masks[i]
            rk[i] = ranks[i]
        with nogil:
            for i in range(N):
                if rk[i] == 0:
                    mu[i] = 1
                    continue
                s = 0
                mi = m[i]
                for j in range(i):
                    if rk[j] >= rk[i]:
                        break
                    mj = m[j]
                    if mj & mi == mj:
                        s += mu[j]
                mu[i] = -s
        return [mu[i] for i in range(N)]
    finally:
        free(m)
        free(rk)
        free(mu)


def topes(ray_pos, ray_neg, int n, start_pos):
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 hyperplanes")
    cdef Py_ssize_t R = len(ray_pos), k, nr
    cdef uint64_t full = (<uint64_t> -1) if n == 64 else ((<uint64_t> 1 << n) - 1)
    cdef uint64_t *rp = <uint64_t *> malloc(max(R, 1) * sizeof(uint64_t))
    cdef uint64_t *rn = <uint64_t *> malloc(max(R, 1) * sizeof(uint64_t))
    cdef uint64_t *zr = <uint64_t *> malloc(max(R, 1) * sizeof(uint64_t))
    cdef int *sel = <int *> malloc(max(R, 1) * sizeof(int))
    cdef uint64_t t, neg, walls, acc, bit, one = 1
    cdef int h
    out = []
    try:
        for k in range(R):
            rp[k] = ray_pos[k]
            rn[k] = ray_neg[k]
            zr[k] = full & ~(rp[k] | rn[k])
        seen = {start_pos}
        queue = [start_pos]
        head = 0
        while head < len(queue):
            t = queue[head]
            head += 1
            neg = full & ~t
            nr = 0
            for k in range(R):
                if (rp[k] & neg) == 0 and (rn[k] & t) == 0:
                    sel[nr] = <int> k
                    nr += 1
            walls = 0
            for h in range(n):
                bit = one << h
                acc = <uint64_t> -1
                for k in range(nr):
                    if zr[sel[k]] & bit:
                        acc &= zr[sel[k]]
                if acc == bit:
                    walls |= bit
            out.append((t, walls, [sel[k] for k in range(nr)]))
            for h in range(n):
                if (walls >> h) & 1:
                    nt = t ^ (one << h)
                    if nt not in seen:
                        seen.add(nt)
                        queue.append(nt)
        return out
    finally:
        free(rp)
        free(rn)
        free(zr)
        free(sel)
