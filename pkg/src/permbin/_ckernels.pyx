# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Same signatures and results as ``_purekernels``."""

import numpy as np

from libc.stdlib cimport calloc, free
from libc.string cimport memset

ctypedef long long i64


cdef inline i64 _add(bint prime, i64 p, i64 q, const i64[::1] add, i64 u, i64 v) noexcept nogil:
    if prime:
        u += v
        return u - p if u >= p else u
    return add[u * q + v]


cdef inline i64 _mul(bint prime, i64 p, i64 N, const i64[::1] exp, const i64[::1] log,
                     i64 u, i64 v) noexcept nogil:
    if u == 0 or v == 0:
        return 0
    if prime:
        return u * v % p
    return exp[(log[u] + log[v]) % N]


def binomial_is_perm(t, i64 n, i64 m, i64 la):
    """Does x^m + g^la * x^n permute F_q? (n, m >= 1)"""
    cdef i64 q = t.q, p = t.p, N = t.q - 1
    cdef bint prime = t.prime
    cdef const i64[::1] exp = t.exp
    cdef const i64[::1] add = t.add
    cdef i64 j, s, um = 0, vn = la % N
    cdef bint ok = True
    cdef unsigned char* seen = <unsigned char*> calloc(q, 1)
    if seen == NULL:
        raise MemoryError()
    m %= N
    n %= N
    with nogil:
        seen[0] = 1
        for j in range(N):
            s = _add(prime, p, q, add, exp[um], exp[vn])
            if seen[s]:
                ok = False
                break
            seen[s] = 1
            um += m
            if um >= N:
                um -= N
            vn += n
            if vn >= N:
                vn -= N
    free(seen)
    return ok


def sparse_values(t, exps, coefs):
    """Values of sum coefs[i] * x^exps[i] at every rep x; index = rep."""
    cdef i64 q = t.q, p = t.p, N = t.q - 1
    cdef bint prime = t.prime
    cdef const i64[::1] exp = t.exp
    cdef const i64[::1] log = t.log
    cdef const i64[::1] add = t.add
    cdef i64[::1] es = np.ascontiguousarray(exps, dtype=np.int64)
    cdef i64[::1] cs = np.ascontiguousarray(coefs, dtype=np.int64)
    out_arr = np.zeros(q, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef i64 k, j, e, c, const = 0, acc, lc
    cdef Py_ssize_t nt = es.shape[0]
    with nogil:
        for k in range(nt):
            if es[k] == 0 and cs[k] != 0:
                const = _add(prime, p, q, add, const, cs[k])
        out[0] = const
        for j in range(N):
            acc = const
            for k in range(nt):
                e = es[k]
                c = cs[k]
                if e == 0 or c == 0:
                    continue
                lc = log[c]
                acc = _add(prime, p, q, add, acc, exp[(lc + j * e) % N])
            out[exp[j]] = acc
    return out_arr


def hermite_scan(t, exps, coefs, i64 imax):
    """First i in [1, imax] where the reduced f^i has a nonzero x^(q-1) term.

    Returns ``(i, coefficient)``, or ``(0, 0)`` when no such i exists.
    """
    cdef i64 q = t.q, p = t.p, N = t.q - 1
    cdef bint prime = t.prime
    cdef const i64[::1] exp = t.exp
    cdef const i64[::1] log = t.log
    cdef const i64[::1] add = t.add
    cdef i64[::1] es = np.ascontiguousarray(exps, dtype=np.int64)
    cdef i64[::1] cs = np.ascontiguousarray(coefs, dtype=np.int64)
    cur_arr = np.zeros(q, dtype=np.int64)
    nxt_arr = np.zeros(q, dtype=np.int64)
    cdef i64[::1] cur_v = cur_arr
    cdef i64[::1] nxt_v = nxt_arr
    cdef i64* cur = &cur_v[0]
    cdef i64* nxt = &nxt_v[0]
    cdef i64* tmp
    cdef Py_ssize_t nt = es.shape[0], k
    cdef i64 i, s, d, e, c, prod, found = 0, coeff = 0
    with nogil:
        for k in range(nt):
            if cs[k] != 0:
                cur[es[k]] = _add(prime, p, q, add, cur[es[k]], cs[k])
        for i in range(1, imax + 1):
            if i > 1:
                memset(nxt, 0, q * sizeof(i64))
                for s in range(q):
                    if cur[s] == 0:
                        continue
                    for k in range(nt):
                        c = cs[k]
                        if c == 0:
                            continue
                        e = es[k]
                        d = s + e
                        if d != 0:
                            d = (d - 1) % N + 1
                        prod = _mul(prime, p, N, exp, log, cur[s], c)
                        nxt[d] = _add(prime, p, q, add, nxt[d], prod)
                tmp = cur
                cur = nxt
                nxt = tmp
            if cur[N] != 0:
                found = i
                coeff = cur[N]
                break
    return found, coeff
