"""numpy implementations of the hot loops; used when the compiled core is absent.

Signatures mirror ``_ckernels.pyx`` exactly. ``t`` is a ``FieldTables``;
exponent arguments are already reduced into ``[0, q - 1]`` and
coefficient arrays are field reps.
"""

import numpy as np


def _fadd(t, u, v):
    if t.prime:
        return (u + v) % t.p
    return t.add[u * t.q + v]


def _fmul_scalar(t, u, c):
    """u * c elementwise for an array u and a nonzero scalar rep c."""
    if t.prime:
        return u * c % t.p
    n = t.q - 1
    out = np.zeros_like(u)
    nz = u != 0
    out[nz] = t.exp[(t.log[u[nz]] + t.log[c]) % n]
    return out


def binomial_is_perm(t, n, m, la):
    """Does x^m + g^la * x^n permute F_q? (n, m >= 1)"""
    N = t.q - 1
    j = np.arange(N, dtype=np.int64)
    u = t.exp[(j * m) % N]
    v = t.exp[(la + j * n) % N]
    s = _fadd(t, u, v)
    counts = np.bincount(s, minlength=t.q)
    # f(0) = 0 already occupies the zero slot
    return counts[0] == 0 and counts.max() <= 1


def sparse_values(t, exps, coefs):
    """Values of sum coefs[i] * x^exps[i] at every rep x; index = rep."""
    N = t.q - 1
    out = np.zeros(t.q, dtype=np.int64)
    j = np.arange(N, dtype=np.int64)
    acc = np.zeros(N, dtype=np.int64)
    const = 0
    for e, c in zip(exps, coefs):
        e, c = int(e), int(c)
        if c == 0:
            continue
        if e == 0:
            const = int(_fadd(t, np.int64(const), np.int64(c)))
            continue
        acc = _fadd(t, acc, t.exp[(t.log[c] + j * e) % N])
    out[0] = const
    if N:
        out[t.exp] = _fadd(t, acc, np.full(N, const, dtype=np.int64))
    return out


def hermite_scan(t, exps, coefs, imax):
    """First i in [1, imax] where the reduced f^i has a nonzero x^(q-1) term.

    Returns ``(i, coefficient)``, or ``(0, 0)`` when no such i exists.
    """
    q, N = t.q, t.q - 1
    terms = [(int(e), int(c)) for e, c in zip(exps, coefs) if c]
    base = np.zeros(q, dtype=np.int64)
    for e, c in terms:
        base[e] = int(_fadd(t, base[e], np.int64(c)))
    cur = base.copy()
    ts = np.arange(1, q, dtype=np.int64)
    for i in range(1, imax + 1):
        if i > 1:
            nxt = np.zeros(q, dtype=np.int64)
            for e, c in terms:
                prod = _fmul_scalar(t, cur, c)
                if e == 0:
                    nxt = _fadd(t, nxt, prod)
                    continue
                # t in [1, N] maps bijectively onto [1, N]; t = 0 lands on e
                dest = (ts + e - 1) % N + 1
                part = np.zeros(q, dtype=np.int64)
                part[dest] = prod[1:]
                nxt = _fadd(t, nxt, part)
                nxt[e] = _fadd(t, nxt[e], prod[0])
            cur = nxt
        if cur[N] != 0:
            return i, int(cur[N])
    return 0, 0
