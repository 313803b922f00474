"""Exact arithmetic in F_p and in small extension fields F_{p^e}.

Elements are plain ints in ``[0, q)``. For prime fields the int is the
residue; for extension fields it packs the coefficient vector of the
element (as a polynomial in the adjoined root, constant term first) as
base-p digits, so ``x`` is encoded as ``p`` and ``1`` as ``1``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from math import isqrt

import numpy as np

from .errors import BadParameters, CompositeCharacteristic, DivisionByZero, FieldTooLarge

FieldElement = int

PRIME_FIELD_LIMIT = 2**31
EXTENSION_FIELD_LIMIT = 1024
# largest order for which log/exp tables (and the compiled kernels) are used
TABLE_LIMIT = 1 << 20

_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with fixed bases).

    The base set is exact for all n < 3.4e14, far above anything used here.
    """
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``p**e``; raises BadParameters if it is not a prime power."""
    fac = factorize(q) if q > 1 else {}
    if len(fac) != 1:
        raise BadParameters(f"{q} is not a prime power")
    ((p, e),) = fac.items()
    return p, e


# -- polynomials over F_p as coefficient lists, constant term first ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    lead_inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: list[int], n: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        n >>= 1
    return result


def is_irreducible(poly: list[int] | tuple[int, ...], p: int) -> bool:
    """Irreducibility over F_p of a polynomial given constant term first.

    A degree-n polynomial is irreducible iff it shares no factor with
    x^(p^i) - x for i <= n/2 (i = 1 is the root test).
    """
    f = _trim(list(poly))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    h = [0, 1]
    for _ in range(n // 2):
        h = _ppowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


def first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e, ordered by packed base-p value."""
    for v in range(p**e):
        coeffs = [(v // p**i) % p for i in range(e)] + [1]
        if coeffs[0] and is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldDesc:
    """Description of F_q, q = p**e, plus the arithmetic on its int encoding.

    Immutable; the lookup tables are built lazily once and then only read.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None
    q: int = dc_field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.e)

    def __repr__(self):
        return f"F_{self.q}" if self.e == 1 else f"F_{self.q}[{self.modulus}]"

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def elements(self) -> range:
        return range(self.q)

    # -- encoding ------------------------------------------------------------
    def digits(self, x: int) -> list[int]:
        p = self.p
        return [(x // p**i) % p for i in range(self.e)]

    def from_digits(self, ds) -> int:
        return sum(int(c) % self.p * self.p**i for i, c in enumerate(ds))

    def element(self, value: int) -> int:
        """Coerce an integer into the field: reduce mod p (the prime subfield)."""
        return value % self.p

    # -- arithmetic ------------------------------------------------------------
    def add(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        return self.from_digits(a + b for a, b in zip(self.digits(x), self.digits(y)))

    def neg(self, x: int) -> int:
        if self.e == 1:
            return -x % self.p
        if self.p == 2:
            return x
        return self.from_digits(-a for a in self.digits(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.e == 1:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        log, exp = self._log_exp
        return exp[(log[x] + log[y]) % (self.q - 1)]

    def mul_schoolbook(self, x: int, y: int) -> int:
        """Product via polynomial multiplication and reduction by the modulus."""
        if self.e == 1:
            return x * y % self.p
        prod = _pmul(_trim(self.digits(x)), _trim(self.digits(y)), self.p)
        return self.from_digits(_pmod(prod, list(self.modulus), self.p))

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("zero has no inverse")
        if self.e == 1:
            return pow(x, -1, self.p)
        log, exp = self._log_exp
        return exp[-log[x] % (self.q - 1)]

    def pow(self, x: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(x), -n)
        if n == 0:
            return 1
        if self.e == 1:
            return pow(x, n, self.p)
        if x == 0:
            return 0
        log, exp = self._log_exp
        return exp[log[x] * n % (self.q - 1)]

    def _pow_schoolbook(self, x: int, n: int) -> int:
        result, base = 1, x
        while n:
            if n & 1:
                result = self.mul_schoolbook(result, base)
            base = self.mul_schoolbook(base, base)
            n >>= 1
        return result

    # -- multiplicative group --------------------------------------------------
    @functools.cached_property
    def generator(self) -> int:
        """Smallest element (by rep) of multiplicative order q - 1."""
        n = self.q - 1
        if n == 1:
            return 1
        ps = list(factorize(n))
        powf = (lambda g, k: pow(g, k, self.p)) if self.e == 1 else self._pow_schoolbook
        for g in range(2, self.q):
            if all(powf(g, n // r) != 1 for r in ps):
                return g
        raise AssertionError("multiplicative group is not cyclic")

    @functools.cached_property
    def _log_exp(self) -> tuple[list[int], list[int]]:
        if self.q > TABLE_LIMIT:
            raise FieldTooLarge(f"log tables not available for q = {self.q}")
        n = self.q - 1
        g = self.generator
        step = (lambda a: a * g % self.p) if self.e == 1 else (lambda a: self.mul_schoolbook(a, g))
        exp = [1] * n
        log = [-1] * self.q
        cur = 1
        for i in range(n):
            exp[i] = cur
            log[cur] = i
            cur = step(cur)
        return log, exp

    def dlog(self, x: int) -> int:
        """Discrete log base ``generator``; -1 for zero."""
        return self._log_exp[0][x]

    def gexp(self, i: int) -> int:
        return self._log_exp[1][i % (self.q - 1)]

    @functools.cached_property
    def tables(self) -> "FieldTables":
        """numpy lookup tables consumed by the kernels."""
        log, exp = self._log_exp
        add = np.zeros(0, dtype=np.int64)
        if self.p == 2 and self.e > 1:
            r = np.arange(self.q, dtype=np.int64)
            add = np.bitwise_xor.outer(r, r).reshape(-1)
        elif self.e > 1:
            digs = np.array([self.digits(x) for x in range(self.q)], dtype=np.int64)
            weights = self.p ** np.arange(self.e, dtype=np.int64)
            summed = (digs[:, None, :] + digs[None, :, :]) % self.p
            add = (summed @ weights).reshape(-1).astype(np.int64)
        return FieldTables(
            q=self.q,
            p=self.p,
            prime=self.e == 1,
            exp=np.asarray(exp, dtype=np.int64),
            log=np.asarray(log, dtype=np.int64),
            add=add,
        )


@dataclass(frozen=True)
class FieldTables:
    q: int
    p: int
    prime: bool
    exp: np.ndarray  # exp[i] = g**i, length q - 1
    log: np.ndarray  # log[x], with log[0] = -1
    add: np.ndarray  # flattened q*q addition table; empty for prime fields


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldDesc:
    """Build (and cache) the descriptor of F_{p^e}."""
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    if e < 1:
        raise BadParameters(f"extension degree must be >= 1, got {e}")
    if e == 1:
        if p > PRIME_FIELD_LIMIT:
            raise FieldTooLarge(f"p = {p} exceeds 2^31")
        return FieldDesc(p, 1)
    if p**e > EXTENSION_FIELD_LIMIT:
        raise FieldTooLarge(f"q = {p}^{e} exceeds {EXTENSION_FIELD_LIMIT}")
    return FieldDesc(p, e, first_irreducible(p, e))


def field_of_order(q: int) -> FieldDesc:
    p, e = prime_power(q)
    return make_field(p, e)
