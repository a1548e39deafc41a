# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_purekernels`` for the reference contracts."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, uint32_t, int64_t
from libc.float cimport DBL_EPSILON
from libc.string cimport memcpy
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING

cnp.import_array()

cdef enum:
    MAXN = 64


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef int _load_adj(adj, int n, uint64_t* out) except -1:
    cdef int v
    if n > MAXN:
        raise ValueError("compiled kernels support n <= 64")
    for v in range(n):
        out[v] = <uint64_t>adj[v]
    return 0


def bfs_all_pairs(adj, int n):
    cdef uint64_t a[MAXN]
    _load_adj(adj, n, a)
    out = np.full((n, n), -1, dtype=np.int64)
    cdef int64_t[:, ::1] d = out
    cdef int src, v, dist
    cdef uint64_t seen, frontier, nxt, f
    with nogil:
        for src in range(n):
            seen = frontier = (<uint64_t>1) << src
            dist = 0
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    v = _ctz(f)
                    f &= f - 1
                    d[src, v] = dist
                    nxt |= a[v]
                frontier = nxt & ~seen
                seen |= frontier
                dist += 1
    return out


def perron_iterate(cnp.ndarray d_in, double tol, long max_iter):
    cdef cnp.ndarray[double, ndim=2, mode="c"] dm = np.ascontiguousarray(d_in, dtype=np.float64)
    cdef int n = dm.shape[0]
    xa = np.ones(n)
    ya = np.empty(n)
    cdef double[::1] x = xa
    cdef double[::1] y = ya
    cdef double[:, ::1] D = dm
    cdef long it = 0, iters = max_iter
    cdef int i, j
    cdef bint converged = False
    cdef double acc, r, rmin = 0, rmax = 0, ymax, slack, lo = 0, hi = 0, xy = 0, xx = 0
    with nogil:
        for it in range(1, max_iter + 1):
            ymax = 0
            for i in range(n):
                acc = 0
                for j in range(n):
                    acc += D[i, j] * x[j]
                y[i] = acc
                r = acc / x[i]
                if i == 0 or r < rmin:
                    rmin = r
                if i == 0 or r > rmax:
                    rmax = r
                if acc > ymax:
                    ymax = acc
            slack = 2.0 * n * DBL_EPSILON * (rmax if rmax > 0 else -rmax)
            lo = rmin - slack
            hi = rmax + slack
            if hi - lo <= tol:
                converged = True
                iters = it
                break
            for i in range(n):
                x[i] = y[i] / ymax
        if not converged:
            for i in range(n):
                acc = 0
                for j in range(n):
                    acc += D[i, j] * x[j]
                y[i] = acc
        for i in range(n):
            xy += x[i] * y[i]
            xx += x[i] * x[i]
    return xy / xx, lo, hi, xa, iters, converged


def canonical_code(adj, int n, cells=None):
    cdef uint64_t a[MAXN]
    cdef uint64_t slots[MAXN]
    cdef uint32_t vec[MAXN]
    cdef uint32_t nv[MAXN]
    cdef int j, v, w, k, pos
    cdef uint64_t used, nu, avail, cell
    cdef uint32_t best
    cdef bytes key
    if n > 32:
        raise ValueError("compiled canonical_code supports n <= 32")
    _load_adj(adj, n, a)
    if cells is None:
        cells = [(1 << n) - 1]
    pos = 0
    for c in cells:
        cell = <uint64_t>c
        for k in range(_popcount(cell)):
            if pos >= n:
                raise ValueError("cells must cover every vertex exactly once")
            slots[pos] = cell
            pos += 1
    if pos != n:
        raise ValueError("cells must cover every vertex exactly once")

    cdef Py_ssize_t vbytes = n * sizeof(uint32_t)
    for w in range(n):
        nv[w] = 0
    states = {(0, PyBytes_FromStringAndSize(<char*>nv, vbytes)): ()}
    code = 0
    for j in range(n):
        best = 0xFFFFFFFF
        for (u, vb) in states:
            used = <uint64_t>u
            memcpy(vec, PyBytes_AS_STRING(vb), vbytes)
            avail = slots[j] & ~used
            while avail:
                v = _ctz(avail)
                avail &= avail - 1
                if vec[v] < best:
                    best = vec[v]
        nxt = {}
        for (u, vb), order in states.items():
            used = <uint64_t>u
            memcpy(vec, PyBytes_AS_STRING(vb), vbytes)
            avail = slots[j] & ~used
            while avail:
                v = _ctz(avail)
                avail &= avail - 1
                if vec[v] != best:
                    continue
                nu = used | ((<uint64_t>1) << v)
                for w in range(n):
                    if (nu >> w) & 1:
                        nv[w] = 0
                    else:
                        nv[w] = (vec[w] << 1) | <uint32_t>((a[v] >> w) & 1)
                key = PyBytes_FromStringAndSize(<char*>nv, vbytes)
                tk = (nu, key)
                if tk not in nxt:
                    nxt[tk] = order + (v,)
        states = nxt
        code = (code << j) | best
    order = next(iter(states.values()))
    return code, list(order)


def odd_component_count(adj, int n, removed):
    cdef uint64_t a[MAXN]
    _load_adj(adj, n, a)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef uint64_t alive = full & ~(<uint64_t>removed)
    cdef uint64_t comp, frontier, nxt, f
    cdef int odd = 0, v
    with nogil:
        while alive:
            comp = frontier = alive & (~alive + 1)
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    v = _ctz(f)
                    f &= f - 1
                    nxt |= a[v]
                frontier = nxt & alive & ~comp
                comp |= frontier
            odd += _popcount(comp) & 1
            alive &= ~comp
    return odd
