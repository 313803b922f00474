"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit
from math import gcd

import numpy as np

from permbin.field import field_of_order
from permbin.kernels import backends


def binomial_sweep(mod, F, n_max=40):
    t = F.tables
    N = F.q - 1
    hits = 0
    for n in range(1, min(n_max, N)):
        for k in (1, 2, 3, 4, 6):
            for la in range(0, N, max(1, N // 16)):
                hits += mod.binomial_is_perm(t, n, n + k, la)
    return hits


def hermite_sweep(mod, F):
    # a permutation monomial, so every exponent gets scanned
    r = next(r for r in range(2, F.q) if gcd(r, F.q - 1) == 1)
    exps = np.array([r], dtype=np.int64)
    coefs = np.array([1], dtype=np.int64)
    return mod.hermite_scan(F.tables, exps, coefs, F.q - 2)


def values_sweep(mod, F):
    exps = np.arange(1, 9, dtype=np.int64)
    coefs = np.ones(8, dtype=np.int64)
    return mod.sparse_values(F.tables, exps, coefs)


CASES = {
    "binomial_is_perm": binomial_sweep,
    "hermite_scan": hermite_sweep,
    "sparse_values": values_sweep,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--orders", default="127,251,256,499,1024")
    args = ap.parse_args()

    mods = backends()
    if "cython" not in mods:
        print("compiled extension not built; only the numpy backend is timed")
    print(f"{'kernel':<18}{'q':>6}" + "".join(f"{name:>12}" for name in mods) + f"{'speedup':>10}")
    for q in (int(s) for s in args.orders.split(",")):
        F = field_of_order(q)
        F.tables  # build tables outside the timed region
        for label, fn in CASES.items():
            secs = {}
            for name, mod in mods.items():
                secs[name] = min(timeit.repeat(lambda: fn(mod, F), number=1, repeat=args.repeat))
            ratio = secs["python"] / secs["cython"] if "cython" in secs else float("nan")
            cells = "".join(f"{secs[n] * 1e3:>10.2f}ms" for n in mods)
            print(f"{label:<18}{q:>6}{cells}{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
