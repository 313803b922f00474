"""Exhaustive enumeration of permutation binomials and the refutation-exponent predictor."""

from __future__ import annotations

import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import gcd

import numpy as np

from . import kernels
from .binom import Binomial, CanonicalBinomial, canonicalize_k, find_multiplier, normalize_n
from .errors import BadParameters, FieldTooLarge, RefutationFailed, TheoremViolation
from .field import FieldDesc, divisors, field_of_order, is_prime, make_field, prime_power, primes_between
from .poly import binom_row_mod_p, binomial_top_coefficient, substitute_monomial

log = logging.getLogger(__name__)

ENUMERATION_LIMIT = 1 << 16
FORBIDDEN_GCDS = frozenset({1, 2, 4})


@dataclass(frozen=True)
class SearchRecord:
    q: int
    p: int
    n: int
    k: int
    a: int
    d: int
    verdict: bool
    canonical: CanonicalBinomial

    @property
    def gcd(self) -> int:
        """gcd(m - n, p - 1); the verification forbids 1, 2 and 4 here."""
        return gcd(self.k, self.p - 1)

    @property
    def trivial(self) -> bool:
        return self.k % (self.q - 1) == 0

    def as_row(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "a": self.a,
            "d": self.d,
            "gcd": self.gcd,
            "trivial": self.trivial,
            "verdict": self.verdict,
        }


@dataclass
class FieldSummary:
    q: int
    p: int
    hits: int
    tested: int
    total: int
    gcd_counts: dict[int, int]
    violations: list[SearchRecord]


@dataclass
class VerificationReport:
    kind: str
    orders: list[int]
    scanned_pruned: int = 0
    scanned_total: int = 0
    hits: int = 0
    gcd_histogram: dict[int, int] = dc_field(default_factory=dict)
    hits_per_field: dict[int, int] = dc_field(default_factory=dict)
    violations: list[SearchRecord] = dc_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.violations

    def as_row(self) -> dict:
        # elapsed is left out so repeated runs serialize identically
        return {
            "kind": self.kind,
            "orders": self.orders,
            "fields": len(self.orders),
            "scanned_pruned": self.scanned_pruned,
            "scanned_total": self.scanned_total,
            "hits": self.hits,
            "gcd_histogram": {str(g): c for g, c in sorted(self.gcd_histogram.items())},
            "hits_per_field": {str(q): c for q, c in sorted(self.hits_per_field.items())},
            "violations": [v.as_row() for v in self.violations],
            "verified": self.verified,
        }


# -- enumeration ---------------------------------------------------------------

def _coset_members(F: FieldDesc, d: int) -> list[list[int]]:
    """Nonzero elements grouped by discrete log mod d (cosets of the d-th powers)."""
    out: list[list[int]] = [[] for _ in range(d)]
    for a in range(1, F.q):
        out[F.dlog(a) % d].append(a)
    return out


def _normal_table(N: int, d: int) -> np.ndarray:
    """For each residue class mod N/d: the smallest member coprime to d, or 0."""
    M = N // d
    table = np.zeros(M, dtype=np.int64)
    for rho in range(M):
        e = rho or M
        while e <= d * N:
            if gcd(e, d) == 1:
                table[rho] = e
                break
            e += M
    return table


def _enumerate(F: FieldDesc, use_pruning: bool) -> tuple[list[SearchRecord], int]:
    if F.q > ENUMERATION_LIMIT:
        raise FieldTooLarge(f"exhaustive enumeration limited to q <= {ENUMERATION_LIMIT}")
    if F.q <= 2:
        return [], 0
    if use_pruning:
        return _enumerate_pruned(F)
    return _enumerate_brute(F)


def _enumerate_brute(F: FieldDesc) -> tuple[list[SearchRecord], int]:
    q, N = F.q, F.q - 1
    t = F.tables
    logs = [F.dlog(a) for a in range(q)]
    records, tested = [], 0
    for n in range(1, N):
        for k in range(1, N - n + 1):
            for a in range(1, q):
                tested += 1
                if kernels.binomial_is_perm(t, n, n + k, logs[a]):
                    b = Binomial(F, n, k, a)
                    records.append(SearchRecord(q, F.p, n, k, a, gcd(k, N), True, canonicalize_k(b)))
    return records, tested


def _enumerate_pruned(F: FieldDesc) -> tuple[list[SearchRecord], int]:
    q, N = F.q, F.q - 1
    t = F.tables
    tables = {d: _normal_table(N, d) for d in divisors(N)}
    cosets: dict[int, list[list[int]]] = {}

    # pass 1: canonical exponent for every (n, k) passing the degree-gcd filter
    per_k = []
    needed: set[tuple[int, int]] = set()
    for k in range(1, N):
        d = gcd(k, N)
        r = _multiplier(k, N)
        ns = np.arange(1, N - k + 1, dtype=np.int64)
        ns = ns[np.gcd(ns, d) == 1]
        n1 = (ns * r - 1) % N + 1
        es = tables[d][n1 % (N // d)]
        per_k.append((k, d, r, ns, n1, es))
        needed.update((int(e), d) for e in np.unique(es))

    # pass 2: test one binomial per (e, d, coset of a)
    hit_cosets: dict[tuple[int, int], list[int]] = {}
    tested = 0
    for e, d in sorted(needed):
        if d not in cosets:
            cosets[d] = _coset_members(F, d)
        hits = []
        for c, members in enumerate(cosets[d]):
            tested += 1
            if kernels.binomial_is_perm(t, e, e + d, F.dlog(members[0])):
                hits.append(c)
        if hits:
            hit_cosets[(e, d)] = hits

    # pass 3: expand canonical hits back to every (n, k, a)
    records = []
    for k, d, r, ns, n1, es in per_k:
        if not any((int(e), d) in hit_cosets for e in np.unique(es)):
            continue
        for n, m1, e in zip(ns.tolist(), n1.tolist(), es.tolist()):
            hits = hit_cosets.get((e, d))
            if not hits:
                continue
            for c in hits:
                for a in cosets[d][c]:
                    cb = CanonicalBinomial(Binomial(F, e, d, a), d, r, m1)
                    records.append(SearchRecord(q, F.p, n, k, a, d, True, cb))
    records.sort(key=lambda s: (s.n, s.k, s.a))
    return records, tested


_MULT_CACHE: dict[tuple[int, int], int] = {}


def _multiplier(k: int, N: int) -> int:
    key = (k, N)
    if key not in _MULT_CACHE:
        _MULT_CACHE[key] = find_multiplier(k, N, N)
    return _MULT_CACHE[key]


def enumerate_perm_binomials(F: FieldDesc, use_pruning: bool = True) -> list[SearchRecord]:
    """Every nontrivial permutation binomial x^n (x^k + a), 1 <= n < n + k <= q - 1.

    With pruning, only canonical representatives (k = d | q - 1, n normalized,
    a up to d-th powers) are tested and the hits are expanded back; the
    result is identical to the brute-force scan. Sorted by (n, k, a).
    """
    return _enumerate(F, use_pruning)[0]


def space_size(q: int) -> int:
    """Number of binomials x^n (x^k + a) with 1 <= n < n + k <= q - 1, a != 0."""
    N = q - 1
    return N * (N - 1) // 2 * (q - 1)


# -- verification ----------------------------------------------------------------

def worker_count() -> int:
    env = os.environ.get("PERMBIN_THREADS")
    if env:
        return max(1, int(env))
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _ordered_map(fn, items, workers):
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _summarize(args) -> FieldSummary:
    q, use_pruning, forbidden = args
    F = field_of_order(q)
    records, tested = _enumerate(F, use_pruning)
    counts = Counter(r.gcd for r in records)
    bad = [r for r in records if r.gcd in forbidden]
    return FieldSummary(q, F.p, len(records), tested, space_size(q), dict(counts), bad)


def _report(kind, orders, summaries, elapsed) -> VerificationReport:
    rep = VerificationReport(kind=kind, orders=list(orders), elapsed=elapsed)
    hist: Counter = Counter()
    for s in summaries:
        rep.scanned_pruned += s.tested
        rep.scanned_total += s.total
        rep.hits += s.hits
        rep.hits_per_field[s.q] = s.hits
        hist.update(s.gcd_counts)
        rep.violations.extend(s.violations)
    rep.gcd_histogram = dict(sorted(hist.items()))
    return rep


def verify_theorem_main(
    p_min: int = 7,
    p_max: int = 499,
    use_pruning: bool = True,
    workers: int | None = None,
    strict: bool = True,
) -> VerificationReport:
    """Check gcd(m - n, p - 1) not in {1, 2, 4} for every permutation binomial, p in range.

    With ``strict`` a violation raises TheoremViolation (an implementation
    bug, the statement itself is proven); otherwise it is only reported.
    """
    if not 7 <= p_min <= p_max:
        raise BadParameters("need 7 <= p_min <= p_max")
    primes = primes_between(p_min, p_max)
    start = time.perf_counter()
    jobs = [(p, use_pruning, FORBIDDEN_GCDS) for p in primes]
    summaries = _ordered_map(_summarize, jobs, workers or worker_count())
    rep = _report("theorem", primes, summaries, time.perf_counter() - start)
    log.info("verified %d primes in %.2fs", len(primes), rep.elapsed)
    if strict and rep.violations:
        raise TheoremViolation(rep.violations[0], rep)
    return rep


def verify_mersenne(
    q_list, use_pruning: bool = True, workers: int | None = None, strict: bool = True
) -> VerificationReport:
    """Check that no nontrivial permutation binomial exists when q - 1 is prime."""
    orders = list(q_list)
    for q in orders:
        prime_power(q)
        if not is_prime(q - 1):
            raise BadParameters(f"q - 1 = {q - 1} is not prime")
    start = time.perf_counter()
    # every hit is a violation here
    jobs = [(q, use_pruning, frozenset(range(q))) for q in orders]
    summaries = _ordered_map(_summarize, jobs, workers or worker_count())
    rep = _report("mersenne", orders, summaries, time.perf_counter() - start)
    if strict and rep.violations:
        raise TheoremViolation(rep.violations[0], rep)
    return rep


def boundary_report(primes=(2, 3, 5)) -> dict[int, list[SearchRecord]]:
    """Brute-force hits for p < 7, outside the verified range (descriptive only)."""
    return {p: enumerate_perm_binomials(make_field(p), use_pruning=False) for p in primes}


# -- refutation predictor ----------------------------------------------------------

@dataclass(frozen=True)
class RefutationPlan:
    p: int
    d: int
    ell: int
    case_tag: str
    candidates: tuple[int, ...]


@dataclass(frozen=True)
class Refutation:
    exponent: int
    coefficient: int
    plan: RefutationPlan
    tested: Binomial  # the binomial whose power was inspected
    pretransformed: bool = False

    def __iter__(self):
        return iter((self.exponent, self.coefficient))


def build_refutation_plan(p: int, d: int) -> RefutationPlan:
    """Which Hermite exponents kill x^n (x^d + a) over F_p, d in {2, 4}."""
    if not is_prime(p) or p <= 5:
        raise BadParameters(f"need a prime p > 5, got {p}")
    if d not in (2, 4) or (p - 1) % d:
        raise BadParameters(f"d = {d} must be 2 or 4 and divide p - 1 = {p - 1}")
    if d == 2:
        ell = (p - 1) // 2
        if ell % 2:
            return RefutationPlan(p, d, ell, "2l+1/l-odd", (ell - 1,))
        return RefutationPlan(p, d, ell, "2l+1/l-even", (ell,))
    if p % 8 == 1:
        ell = (p - 1) // 8
        if ell % 2 == 0:
            return RefutationPlan(p, d, ell, "8l+1/l-even", (2 * ell,))
        return RefutationPlan(p, d, ell, "8l+1/l-odd", _dedup((2 * ell + 2, 8)))
    ell = (p - 1) // 4
    if ell % 4 == 1:
        return RefutationPlan(p, d, ell, "4l+1/l=1mod4", (ell - 1,))
    return RefutationPlan(p, d, ell, "4l+1/l=3mod4", _dedup((ell + 1, 4)))


def _dedup(xs):
    return tuple(dict.fromkeys(xs))


def refute(b: CanonicalBinomial | Binomial) -> Refutation:
    """Find a plan exponent whose reduced power has a nonzero x^(p-1) term.

    The input must be canonical: prime field, k = d in {2, 4}, n the
    normalized representative. Over F_13 with d = 4 and n = 5 the binomial
    is first mapped to x^3 (x^4 + 1/a) by x -> x^11 and scaling by 1/a.
    """
    base = b.base if isinstance(b, CanonicalBinomial) else b
    F = base.field
    if F.e != 1:
        raise BadParameters("refute works over prime fields only")
    plan = build_refutation_plan(F.p, base.k)
    if normalize_n(base) != base:
        raise BadParameters(f"{base} is not in normalized form")

    target, transformed = base, False
    if F.p == 13 and base.k == 4 and base.n == 5:
        ainv = F.inv(base.a)
        g = substitute_monomial(base.to_poly(), 11).scale(ainv)
        target = Binomial(F, 3, 4, ainv)
        assert g == target.to_poly()
        transformed = True

    for e in plan.candidates:
        c = binomial_top_coefficient(target.n, target.k, target.a, e, F)
        if c:
            return Refutation(e, c, plan, target, transformed)
    raise RefutationFailed(f"no candidate in {plan.candidates} refutes {base}")


@dataclass(frozen=True)
class DegreeSet:
    exponents: tuple[int, ...]
    multiples: int  # how many exponents are divisible by p - 1


def degree_multiset(n: int, d: int, e: int, p: int) -> DegreeSet:
    """Exponents of the nonvanishing terms of (x^n (x^d + a))^e over F_p."""
    row = binom_row_mod_p(e, p)
    exps = tuple(n * e + d * i for i, b in enumerate(row) if b)
    return DegreeSet(exps, sum(1 for x in exps if x % (p - 1) == 0))


def canonical_binomials(p: int, d: int):
    """All canonical x^n (x^d + a) over F_p passing the degree-gcd filter."""
    F = make_field(p)
    N = p - 1
    seen = sorted({normalize_n(Binomial(F, n, d, 1)).n for n in range(1, N + 1) if gcd(n, d) == 1})
    for n in seen:
        for a in range(1, p):
            yield Binomial(F, n, d, a)


def refutation_table(p: int, d: int, n: int | None = None, a: int | None = None):
    """Refutations for the canonical binomials over F_p, optionally filtered by n and a."""
    out = []
    for b in canonical_binomials(p, d):
        if (n is None or b.n == n) and (a is None or b.a == a):
            out.append((b, refute(b)))
    return out
