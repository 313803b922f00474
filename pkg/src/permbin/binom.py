"""Binomials x^n (x^k + a) and the reductions that preserve the permutation property."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BadParameters, HypothesisViolated, NotCoprimeFilter
from .field import FieldDesc
from .poly import SparsePoly, reduce_exponent


@dataclass(frozen=True)
class Binomial:
    """x^n (x^k + a) = x^m + a x^n with m = n + k."""

    field: FieldDesc
    n: int
    k: int
    a: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise BadParameters(f"need n, k >= 1 (got n={self.n}, k={self.k})")
        if not 0 < self.a < self.field.q:
            raise BadParameters(f"a must be a nonzero element of {self.field}")

    @property
    def m(self) -> int:
        return self.n + self.k

    @property
    def d(self) -> int:
        return gcd(self.k, self.field.q - 1)

    def to_poly(self) -> SparsePoly:
        return SparsePoly.binomial(self.field, self.n, self.k, self.a)


@dataclass(frozen=True)
class CanonicalBinomial:
    """Representative x^e (x^d + a) of a binomial's permutation class.

    ``multiplier`` is the r used in the substitution x -> x^r;
    ``substituted_n`` is the exponent right after that substitution,
    before the congruence shift to ``base.n``.
    """

    base: Binomial
    d: int
    multiplier: int
    substituted_n: int

    @property
    def shift(self) -> int:
        return self.base.n - self.substituted_n


def is_trivial(b: Binomial) -> bool:
    # with n >= 1 the only way to collapse to a monomial is k = 0 mod q - 1
    return b.k % (b.field.q - 1) == 0


def degree_gcd_filter(b: Binomial) -> bool:
    """False when the term degrees share a factor with q - 1 (then not a permutation)."""
    return gcd(gcd(b.n, b.m), b.field.q - 1) == 1


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    return a, x0, y0


def find_multiplier(k: int, N: int, M: int) -> int:
    """Smallest r > 0 with k*r = gcd(k, N) (mod N) and gcd(r, M) = 1.

    The solutions of the congruence are r = s (mod N/d) where s inverts
    k/d modulo N/d (extended gcd). A coprime-to-M member of that class
    always exists: split M = A*B with A the largest divisor coprime to
    N/d, and take r = s (mod B*N/d), r = 1 (mod A) by CRT. That value
    bounds the upward scan over the class.
    """
    if k < 1 or N < 1 or M < 1:
        raise BadParameters("k, N, M must be positive")
    d = gcd(k, N)
    step = N // d
    _, x, _ = _egcd(k // d, step)
    s = x % step or step

    A, B = M, 1
    g = gcd(A, step)
    while g > 1:
        A //= g
        B *= g
        g = gcd(A, step)
    mod1 = B * step
    # CRT: r = s (mod mod1), r = 1 (mod A); gcd(mod1, A) = 1
    _, u, _ = _egcd(mod1, A)
    bound = (s + mod1 * ((1 - s) * u % A)) % (mod1 * A) or mod1 * A

    r = s
    while r <= bound:
        if gcd(r, M) == 1:
            break
        r += step
    else:
        raise AssertionError("CRT bound violated")
    assert k * r % N == d % N and gcd(r, M) == 1
    return r


def _smallest_coprime_rep(n: int, modulus: int, d: int, bound: int) -> int:
    e = (n - 1) % modulus + 1
    while gcd(e, d) != 1:
        e += modulus
        if e > bound:
            raise AssertionError("no representative coprime to d")
    return e


def normalize_n(b: Binomial) -> Binomial:
    """Smallest e = n (mod (q-1)/d) with gcd(e, d) = 1, d = k dividing q - 1."""
    N = b.field.q - 1
    d = b.k
    if N % d:
        raise HypothesisViolated(f"k = {d} does not divide q - 1 = {N}")
    if gcd(b.n, d) != 1:
        raise HypothesisViolated(f"gcd(n, d) = gcd({b.n}, {d}) != 1")
    e = _smallest_coprime_rep(b.n, N // d, d, d * N)
    return Binomial(b.field, e, d, b.a)


def canonicalize_k(b: Binomial) -> CanonicalBinomial:
    """Replace k by d = gcd(k, q-1) via x -> x^r, then normalize n.

    x -> x^r permutes F_q because gcd(r, q-1) = 1, so the permutation
    property is unchanged.
    """
    if not degree_gcd_filter(b):
        raise NotCoprimeFilter(f"gcd of the degrees of {b} shares a factor with q - 1")
    N = b.field.q - 1
    d = gcd(b.k, N)
    r = find_multiplier(b.k, N, N)
    n1 = reduce_exponent(b.n * r, b.field.q)
    base = normalize_n(Binomial(b.field, n1, d, b.a))
    return CanonicalBinomial(base=base, d=d, multiplier=r, substituted_n=n1)


def scale_a(b: Binomial, c: int) -> Binomial:
    """x^n (x^d + a c^(-d)): equal to c^(-(n+d)) b(c x), hence equivalent."""
    if c == 0:
        raise BadParameters("c must be nonzero")
    F = b.field
    return Binomial(F, b.n, b.k, F.mul(b.a, F.pow(F.inv(c), b.k)))
