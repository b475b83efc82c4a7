# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset and tableau kernels.  Mirrors ``_kernels_py``; masks are
64-bit words, so graphs are limited to 64 vertices."""

from libc.stdint cimport uint64_t
from libc.math cimport fabs

cimport numpy as cnp
import numpy as np

cnp.import_array()

DOMINATING = 0
SECURE = 1
CONNECTED = 2
SECURE_CONNECTED = 3

cdef enum:
    MAXN = 64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef inline int lowbit(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef inline uint64_t cover(const uint64_t* closed, uint64_t s) noexcept nogil:
    cdef uint64_t cov = 0
    while s:
        cov |= closed[lowbit(s)]
        s &= s - 1
    return cov


cdef inline bint connected_set(const uint64_t* opened, uint64_t s) noexcept nogil:
    cdef uint64_t reached, frontier, nxt, f
    if s == 0:
        return False
    reached = s & (~s + 1)
    frontier = reached
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= opened[lowbit(f)]
            f &= f - 1
        nxt &= s & ~reached
        reached |= nxt
        frontier = nxt
    return reached == s


cdef int undefended(const uint64_t* closed, const uint64_t* opened, int n,
                    uint64_t s, bint need_conn) noexcept nogil:
    cdef uint64_t full = (<uint64_t>0xFFFFFFFFFFFFFFFF) >> (64 - n)
    cdef uint64_t vb, cand, wb, t
    cdef int v
    cdef bint ok
    for v in range(n):
        vb = (<uint64_t>1) << v
        if s & vb:
            continue
        cand = opened[v] & s
        ok = False
        while cand:
            wb = cand & (~cand + 1)
            cand ^= wb
            t = (s ^ wb) | vb
            if cover(closed, t) == full and (not need_conn or connected_set(opened, t)):
                ok = True
                break
        if not ok:
            return v
    return -1


cdef bint property_holds(const uint64_t* closed, const uint64_t* opened, int n,
                         uint64_t s, int prop) noexcept nogil:
    cdef uint64_t full = (<uint64_t>0xFFFFFFFFFFFFFFFF) >> (64 - n)
    if cover(closed, s) != full:
        return False
    if (prop == 2 or prop == 3) and not connected_set(opened, s):
        return False
    if prop == 1:
        return undefended(closed, opened, n, s, False) < 0
    if prop == 3:
        return undefended(closed, opened, n, s, True) < 0
    return True


cdef int _load(masks, uint64_t* out) except -1:
    cdef int i
    if len(masks) > MAXN:
        raise ValueError("compiled kernels handle at most 64 vertices")
    for i in range(len(masks)):
        out[i] = <uint64_t>masks[i]
    return 0


def coverage(closed, s):
    cdef uint64_t c[MAXN]
    _load(closed, c)
    return cover(c, <uint64_t>s)


def is_connected_set(opened, s):
    cdef uint64_t o[MAXN]
    _load(opened, o)
    return connected_set(o, <uint64_t>s)


def first_undefended(closed, opened, int n, s, need_connected):
    cdef uint64_t c[MAXN]
    cdef uint64_t o[MAXN]
    _load(closed, c)
    _load(opened, o)
    return undefended(c, o, n, <uint64_t>s, bool(need_connected))


def has_property(closed, opened, int n, s, int prop):
    cdef uint64_t c[MAXN]
    cdef uint64_t o[MAXN]
    if n == 0:
        return True
    _load(closed, c)
    _load(opened, o)
    return property_holds(c, o, n, <uint64_t>s, prop)


cdef bint search(const uint64_t* closed, const uint64_t* opened, int n,
                 int prop, int size, uint64_t* out) noexcept nogil:
    cdef uint64_t full = (<uint64_t>0xFFFFFFFFFFFFFFFF) >> (64 - n)
    cdef int maxnb[MAXN]
    cdef int chosen[MAXN]
    cdef uint64_t covs[MAXN + 1]
    cdef int depth = 0, nxt = 0, limit, first, t
    cdef uint64_t cov, unc, s
    for t in range(n):
        maxnb[t] = 63 - __builtin_clzll(closed[t])
    covs[0] = 0
    while True:
        if depth == size:
            if covs[size] == full:
                s = 0
                for t in range(size):
                    s |= (<uint64_t>1) << chosen[t]
                if property_holds(closed, opened, n, s, prop):
                    out[0] = s
                    return True
            depth -= 1
            if depth < 0:
                return False
            nxt = chosen[depth] + 1
            continue
        cov = covs[depth]
        unc = ~cov & full
        limit = n - (size - depth)
        if unc:
            first = lowbit(unc)
            if maxnb[first] < limit:
                limit = maxnb[first]
        if nxt > limit:
            depth -= 1
            if depth < 0:
                return False
            nxt = chosen[depth] + 1
            continue
        chosen[depth] = nxt
        covs[depth + 1] = cov | closed[nxt]
        depth += 1
        nxt += 1


def min_property_set(closed, opened, int n, int prop, int lo, int hi):
    cdef uint64_t c[MAXN]
    cdef uint64_t o[MAXN]
    cdef uint64_t found = 0
    cdef bint ok
    cdef int size
    if n == 0:
        return 0, 0
    _load(closed, c)
    _load(opened, o)
    for size in range(max(lo, 1), hi + 1):
        with nogil:
            ok = search(c, o, n, prop, size, &found)
        if ok:
            return size, int(found)
    return -1, 0


def eta_ftran(double[::1] v, cnp.int64_t[::1] rows, double[:, ::1] etas, int count):
    """Apply ``count`` stored eta columns to ``v`` in place (forward order)."""
    cdef Py_ssize_t m = v.shape[0]
    cdef Py_ssize_t i
    cdef int t
    cdef cnp.int64_t r
    cdef double tr
    with nogil:
        for t in range(count):
            r = rows[t]
            tr = v[r] / etas[t, r]
            if tr != 0.0:
                for i in range(m):
                    v[i] -= tr * etas[t, i]
            v[r] = tr
    return np.asarray(v)


def eta_btran(double[::1] w, cnp.int64_t[::1] rows, double[:, ::1] etas, int count):
    """Transpose counterpart of ``eta_ftran``, applied in reverse order."""
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t i
    cdef int t
    cdef cnp.int64_t r
    cdef double acc
    with nogil:
        for t in range(count - 1, -1, -1):
            r = rows[t]
            acc = 0.0
            for i in range(m):
                if i != r:
                    acc += etas[t, i] * w[i]
            w[r] = (w[r] - acc) / etas[t, r]
    return np.asarray(w)
