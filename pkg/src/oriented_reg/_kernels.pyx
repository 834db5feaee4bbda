# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the homology oracle.

Same API as ``_kernels_py``. Masks must fit in 63 bits; the selector in
``kernels.py`` routes wider inputs to the Python fallback. Rational
elimination runs in int64 and raises ``OverflowError`` when an entry would
leave that range; the selector then redoes the work with Python integers.
"""

from libc.stdint cimport uint64_t, int64_t, int32_t
from libc.stdlib cimport malloc, calloc, realloc, free, qsort

cdef extern from *:
    """
    #include <stdint.h>
    static inline int orr_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int orr_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    static inline int orr_mul_ovf(int64_t a, int64_t b, int64_t *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int orr_sub_ovf(int64_t a, int64_t b, int64_t *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int orr_popcount(unsigned long long x) nogil
    int orr_ctz(unsigned long long x) nogil
    int orr_mul_ovf(int64_t a, int64_t b, int64_t *r) nogil
    int orr_sub_ovf(int64_t a, int64_t b, int64_t *r) nogil

from oriented_reg import _kernels_py

BACKEND = "compiled"


cdef int _cmp_u64(const void *a, const void *b) noexcept nogil:
    cdef uint64_t x = (<const uint64_t *> a)[0]
    cdef uint64_t y = (<const uint64_t *> b)[0]
    return (x > y) - (x < y)


cdef struct FaceBuf:
    uint64_t *data
    Py_ssize_t size
    Py_ssize_t cap


cdef int _push(FaceBuf *buf, uint64_t f) except -1:
    cdef uint64_t *grown
    if buf.size == buf.cap:
        buf.cap = buf.cap * 2 if buf.cap else 256
        grown = <uint64_t *> realloc(buf.data, buf.cap * sizeof(uint64_t))
        if grown == NULL:
            raise MemoryError()
        buf.data = grown
    buf.data[buf.size] = f
    buf.size += 1
    return 0


cdef int _enumerate(uint64_t ground, uint64_t *gens, Py_ssize_t ngens, FaceBuf *out) except -1:
    cdef uint64_t rest = ground, bit, c, g
    cdef Py_ssize_t i, j, before, nrel
    cdef uint64_t *rel = <uint64_t *> malloc((ngens + 1) * sizeof(uint64_t))
    if rel == NULL:
        raise MemoryError()
    try:
        _push(out, 0)
        while rest:
            bit = rest & (~rest + 1)
            rest ^= bit
            nrel = 0
            for j in range(ngens):
                if gens[j] & bit:
                    rel[nrel] = gens[j]
                    nrel += 1
            before = out.size
            for i in range(before):
                c = out.data[i] | bit
                for j in range(nrel):
                    g = rel[j]
                    if (g & c) == g:
                        break
                else:
                    _push(out, c)
    finally:
        free(rel)
    return 0


cdef uint64_t *_gens_array(uint64_t ground, gens, Py_ssize_t *count, bint *has_zero) except NULL:
    cdef list kept = []
    cdef uint64_t g
    has_zero[0] = False
    for x in gens:
        g = x
        if g & ~ground:
            continue
        if g == 0:
            has_zero[0] = True
        kept.append(g)
    cdef uint64_t *arr = <uint64_t *> malloc((len(kept) + 1) * sizeof(uint64_t))
    if arr == NULL:
        raise MemoryError()
    for i, x in enumerate(kept):
        arr[i] = x
    count[0] = len(kept)
    return arr


def independent_sets(ground, gens):
    """Subsets of ``ground`` that contain no mask in ``gens`` (0 included)."""
    cdef uint64_t gr = ground
    cdef Py_ssize_t ngens, i
    cdef bint has_zero
    cdef uint64_t *arr = _gens_array(gr, gens, &ngens, &has_zero)
    cdef FaceBuf buf
    buf.data = NULL
    buf.size = 0
    buf.cap = 0
    try:
        if has_zero:
            return []
        _enumerate(gr, arr, ngens, &buf)
        return [buf.data[i] for i in range(buf.size)]
    finally:
        free(arr)
        free(buf.data)


cdef Py_ssize_t _find(uint64_t *arr, Py_ssize_t n, uint64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        elif arr[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


cdef Py_ssize_t _rank_boundary(uint64_t *rows_faces, Py_ssize_t nrows,
                               uint64_t *cols_faces, Py_ssize_t ncols) except -1:
    """GF(2) rank of the boundary matrix from ``rows_faces`` to ``cols_faces``."""
    cdef Py_ssize_t words = (ncols + 63) >> 6
    cdef Py_ssize_t i, w, c, idx, rank = 0
    cdef uint64_t f, rest, bit
    cdef uint64_t *mat
    cdef uint64_t *row
    cdef uint64_t *prow
    cdef uint64_t **pivot
    if nrows == 0 or ncols == 0:
        return 0
    mat = <uint64_t *> calloc(nrows * words, sizeof(uint64_t))
    pivot = <uint64_t **> calloc(ncols, sizeof(uint64_t *))
    if mat == NULL or pivot == NULL:
        free(mat)
        free(pivot)
        raise MemoryError()
    with nogil:
        for i in range(nrows):
            f = rows_faces[i]
            row = mat + i * words
            rest = f
            while rest:
                bit = rest & (~rest + 1)
                rest ^= bit
                idx = _find(cols_faces, ncols, f ^ bit)
                row[idx >> 6] |= (<uint64_t> 1) << (idx & 63)
        for i in range(nrows):
            row = mat + i * words
            w = 0
            while True:
                while w < words and row[w] == 0:
                    w += 1
                if w == words:
                    break
                c = (w << 6) + orr_ctz(row[w])
                prow = pivot[c]
                if prow == NULL:
                    pivot[c] = row
                    rank += 1
                    break
                for idx in range(w, words):
                    row[idx] ^= prow[idx]
    free(mat)
    free(pivot)
    return rank


cdef inline int64_t _gcd(int64_t a, int64_t b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef struct SparseRow:
    Py_ssize_t n
    int32_t *cols
    int64_t *vals


cdef Py_ssize_t _rank_boundary_qq(uint64_t *rows_faces, Py_ssize_t nrows,
                                  uint64_t *cols_faces, Py_ssize_t ncols) except -2:
    """Rank over QQ of the signed boundary matrix, or -1 on int64 overflow."""
    cdef Py_ssize_t i, j, t, n, m, pn, c, rank = 0
    cdef int overflow = 0
    cdef uint64_t f, rest, bit
    cdef int64_t sign, a, b, g, x, y, key_v
    cdef int32_t key_c
    cdef int32_t *ca
    cdef int32_t *cb
    cdef int32_t *ctmp
    cdef int64_t *va
    cdef int64_t *vb
    cdef int64_t *vtmp
    cdef int32_t *pc
    cdef int64_t *pv
    cdef SparseRow *piv
    if nrows == 0 or ncols == 0:
        return 0
    ca = <int32_t *> malloc((ncols + 1) * sizeof(int32_t))
    cb = <int32_t *> malloc((ncols + 1) * sizeof(int32_t))
    va = <int64_t *> malloc((ncols + 1) * sizeof(int64_t))
    vb = <int64_t *> malloc((ncols + 1) * sizeof(int64_t))
    piv = <SparseRow *> calloc(ncols, sizeof(SparseRow))
    if ca == NULL or cb == NULL or va == NULL or vb == NULL or piv == NULL:
        free(ca); free(cb); free(va); free(vb); free(piv)
        raise MemoryError()
    with nogil:
        for i in range(nrows):
            f = rows_faces[i]
            rest = f
            n = 0
            sign = 1
            while rest:
                bit = rest & (~rest + 1)
                rest ^= bit
                ca[n] = <int32_t> _find(cols_faces, ncols, f ^ bit)
                va[n] = sign
                sign = -sign
                n += 1
            for j in range(1, n):
                key_c = ca[j]
                key_v = va[j]
                t = j - 1
                while t >= 0 and ca[t] > key_c:
                    ca[t + 1] = ca[t]
                    va[t + 1] = va[t]
                    t -= 1
                ca[t + 1] = key_c
                va[t + 1] = key_v
            while n > 0:
                c = ca[0]
                if piv[c].n == 0:
                    g = 0
                    for j in range(n):
                        g = _gcd(g, va[j])
                    if va[0] < 0:
                        g = -g
                    piv[c].cols = <int32_t *> malloc(n * sizeof(int32_t))
                    piv[c].vals = <int64_t *> malloc(n * sizeof(int64_t))
                    if piv[c].cols == NULL or piv[c].vals == NULL:
                        overflow = 2
                        break
                    for j in range(n):
                        piv[c].cols[j] = ca[j]
                        piv[c].vals[j] = va[j] // g
                    piv[c].n = n
                    rank += 1
                    break
                pn = piv[c].n
                pc = piv[c].cols
                pv = piv[c].vals
                a = va[0]
                b = pv[0]
                g = _gcd(a, b)
                a = a // g
                b = b // g
                j = 0
                t = 0
                m = 0
                while j < n or t < pn:
                    if t >= pn or (j < n and ca[j] < pc[t]):
                        if orr_mul_ovf(b, va[j], &x):
                            overflow = 1
                            break
                        c = ca[j]
                        j += 1
                    elif j >= n or pc[t] < ca[j]:
                        if orr_mul_ovf(a, pv[t], &y) or orr_sub_ovf(0, y, &x):
                            overflow = 1
                            break
                        c = pc[t]
                        t += 1
                    else:
                        if orr_mul_ovf(b, va[j], &x) or orr_mul_ovf(a, pv[t], &y) or orr_sub_ovf(x, y, &x):
                            overflow = 1
                            break
                        c = ca[j]
                        j += 1
                        t += 1
                    if x != 0:
                        cb[m] = <int32_t> c
                        vb[m] = x
                        m += 1
                if overflow:
                    break
                g = 0
                for j in range(m):
                    g = _gcd(g, vb[j])
                if g > 1:
                    for j in range(m):
                        vb[j] = vb[j] // g
                ctmp = ca; ca = cb; cb = ctmp
                vtmp = va; va = vb; vb = vtmp
                n = m
            if overflow:
                break
    for c in range(ncols):
        free(piv[c].cols)
        free(piv[c].vals)
    free(piv); free(ca); free(cb); free(va); free(vb)
    if overflow == 2:
        raise MemoryError()
    return -1 if overflow else rank


cdef list _homology_from_buf(uint64_t *faces, Py_ssize_t nfaces, bint rational=False):
    cdef Py_ssize_t i, k, top = -1
    cdef int size
    if nfaces == 0:
        return [0]
    for i in range(nfaces):
        size = orr_popcount(faces[i])
        if size > top:
            top = size
    cdef Py_ssize_t nsizes = top + 1
    cdef Py_ssize_t *counts = <Py_ssize_t *> calloc(nsizes + 1, sizeof(Py_ssize_t))
    cdef Py_ssize_t *offsets = <Py_ssize_t *> calloc(nsizes + 1, sizeof(Py_ssize_t))
    cdef Py_ssize_t *fill = <Py_ssize_t *> calloc(nsizes + 1, sizeof(Py_ssize_t))
    cdef uint64_t *grouped = <uint64_t *> malloc(nfaces * sizeof(uint64_t))
    cdef Py_ssize_t *ranks = <Py_ssize_t *> calloc(nsizes + 2, sizeof(Py_ssize_t))
    if counts == NULL or offsets == NULL or fill == NULL or grouped == NULL or ranks == NULL:
        free(counts); free(offsets); free(fill); free(grouped); free(ranks)
        raise MemoryError()
    try:
        for i in range(nfaces):
            counts[orr_popcount(faces[i])] += 1
        for k in range(1, nsizes + 1):
            offsets[k] = offsets[k - 1] + counts[k - 1]
        for i in range(nfaces):
            k = orr_popcount(faces[i])
            grouped[offsets[k] + fill[k]] = faces[i]
            fill[k] += 1
        for k in range(nsizes):
            qsort(grouped + offsets[k], counts[k], sizeof(uint64_t), _cmp_u64)
        if nsizes > 1 and counts[1] > 0:
            ranks[1] = 1
        for k in range(2, nsizes):
            if rational:
                ranks[k] = _rank_boundary_qq(grouped + offsets[k], counts[k],
                                             grouped + offsets[k - 1], counts[k - 1])
                if ranks[k] < 0:
                    raise OverflowError("rational elimination left the int64 range")
            else:
                ranks[k] = _rank_boundary(grouped + offsets[k], counts[k],
                                          grouped + offsets[k - 1], counts[k - 1])
        return [counts[k] - ranks[k] - ranks[k + 1] for k in range(nsizes)]
    finally:
        free(counts); free(offsets); free(fill); free(grouped); free(ranks)


cdef list _homology_of_faces(faces, bint rational):
    cdef Py_ssize_t n = len(faces), i
    cdef uint64_t *buf = <uint64_t *> malloc((n + 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        for i, f in enumerate(faces):
            buf[i] = f
        return _homology_from_buf(buf, n, rational)
    finally:
        free(buf)


cdef list _independence_homology(ground, gens, bint rational):
    cdef uint64_t gr = ground
    cdef Py_ssize_t ngens
    cdef bint has_zero
    cdef uint64_t *arr = _gens_array(gr, gens, &ngens, &has_zero)
    cdef FaceBuf buf
    buf.data = NULL
    buf.size = 0
    buf.cap = 0
    try:
        if has_zero:
            return [0]
        _enumerate(gr, arr, ngens, &buf)
        return _homology_from_buf(buf.data, buf.size, rational)
    finally:
        free(arr)
        free(buf.data)


def reduced_homology_gf2(faces):
    """Reduced Betti numbers over GF(2), indexed by dimension -1..top."""
    return _homology_of_faces(faces, False)


def reduced_homology_qq(faces):
    """Reduced Betti numbers over QQ, indexed by dimension -1..top."""
    return _homology_of_faces(faces, True)


def independence_homology_gf2(ground, gens):
    """Reduced GF(2) homology of the independence complex of ``gens`` on ``ground``."""
    return _independence_homology(ground, gens, False)


def independence_homology_qq(ground, gens):
    """Reduced rational homology of the independence complex of ``gens`` on ``ground``."""
    return _independence_homology(ground, gens, True)


def hochster_sweep(ground, gens, weights, bint rational, sigmas=None, bint prune=True):
    """Compiled twin of ``_kernels_py.hochster_sweep``."""
    cdef uint64_t gr = ground, sigma = 0, cover, g, rest, bit
    cdef Py_ssize_t ngens, j, nin, d, size
    cdef int64_t deg
    cdef bint has_zero
    cdef int64_t w[64]
    cdef uint64_t *arr = _gens_array(gr, gens, &ngens, &has_zero)
    cdef uint64_t *inside = <uint64_t *> malloc((ngens + 1) * sizeof(uint64_t))
    cdef FaceBuf buf
    cdef dict out = {}
    buf.data = NULL
    buf.size = 0
    buf.cap = 0
    if inside == NULL:
        free(arr)
        raise MemoryError()
    for j in range(64):
        w[j] = weights[j] if j < len(weights) else 1
    it = iter(sigmas) if sigmas is not None else None
    try:
        if has_zero:
            return out
        while True:
            if it is None:
                sigma = (sigma - gr) & gr
                if sigma == 0:
                    break
            else:
                nxt = next(it, None)
                if nxt is None:
                    break
                sigma = nxt
                if sigma == 0:
                    continue
            nin = 0
            cover = 0
            for j in range(ngens):
                g = arr[j]
                if (g & ~sigma) == 0:
                    inside[nin] = g
                    nin += 1
                    cover |= g
            if prune and cover != sigma:
                continue
            buf.size = 0
            _enumerate(sigma, inside, nin, &buf)
            try:
                ranks = _homology_from_buf(buf.data, buf.size, rational)
            except OverflowError:
                ranks = _kernels_py.independence_homology_qq(sigma, [inside[j] for j in range(nin)])
            size = orr_popcount(sigma)
            deg = 0
            rest = sigma
            while rest:
                bit = rest & (~rest + 1)
                rest ^= bit
                deg += w[orr_ctz(bit)]
            for d, r in enumerate(ranks):
                if r:
                    key = (size - d, deg)
                    out[key] = out.get(key, 0) + r
        return out
    finally:
        free(arr)
        free(inside)
        free(buf.data)
