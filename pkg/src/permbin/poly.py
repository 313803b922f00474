"""Sparse polynomials over F_q and their reduction modulo x^q - x."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb

from .field import FieldDesc


def reduce_exponent(t: int, q: int) -> int:
    """Exponent map of the reduction mod x^q - x.

    Nonzero exponents go to ((t - 1) mod (q - 1)) + 1, so x^(q-1) stays put
    and the function value at 0 is preserved; 0 stays 0.
    """
    if t == 0:
        return 0
    return (t - 1) % (q - 1) + 1


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial as sorted ``(exponent, coefficient)`` pairs, coefficients nonzero."""

    field: FieldDesc
    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_terms(cls, field: FieldDesc, terms) -> "SparsePoly":
        """Build from arbitrary (exponent, coefficient) pairs, merging repeats."""
        acc: dict[int, int] = {}
        for t, c in terms:
            if t < 0:
                raise ValueError(f"negative exponent {t}")
            acc[t] = field.add(acc.get(t, 0), c)
        return cls(field, tuple((t, c) for t, c in sorted(acc.items()) if c))

    @classmethod
    def monomial(cls, field: FieldDesc, t: int, c: int = 1) -> "SparsePoly":
        return cls.from_terms(field, [(t, c)])

    @classmethod
    def binomial(cls, field: FieldDesc, n: int, k: int, a: int) -> "SparsePoly":
        """x^n (x^k + a)."""
        return cls.from_terms(field, [(n + k, 1), (n, a)])

    @property
    def degree(self) -> int | None:
        """Largest exponent; None for the zero polynomial."""
        return self.terms[-1][0] if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, t: int) -> int:
        for s, c in self.terms:
            if s == t:
                return c
        return 0

    def scale(self, c: int) -> "SparsePoly":
        F = self.field
        return SparsePoly.from_terms(F, [(t, F.mul(b, c)) for t, b in self.terms])

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        return SparsePoly.from_terms(self.field, self.terms + other.terms)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        return _mul(self, other, reduce=False)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t, c in reversed(self.terms):
            mono = "" if t == 0 else ("x" if t == 1 else f"x^{t}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def _mul(f: SparsePoly, g: SparsePoly, reduce: bool) -> SparsePoly:
    F = f.field
    q = F.q
    acc: dict[int, int] = {}
    for s, b in f.terms:
        for t, c in g.terms:
            u = s + t
            if reduce:
                u = reduce_exponent(u, q)
            acc[u] = F.add(acc.get(u, 0), F.mul(b, c))
    return SparsePoly(F, tuple((t, c) for t, c in sorted(acc.items()) if c))


def reduce_mod_field_poly(f: SparsePoly) -> SparsePoly:
    """Canonical representative of ``f`` modulo x^q - x (same function on F_q)."""
    q = f.field.q
    return SparsePoly.from_terms(f.field, [(reduce_exponent(t, q), c) for t, c in f.terms])


def mul_reduced(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    return _mul(f, g, reduce=True)


def pow_reduced(f: SparsePoly, i: int) -> SparsePoly:
    """f^i reduced mod x^q - x, reducing after every multiplication."""
    if i < 1:
        raise ValueError("exponent must be >= 1")
    base = reduce_mod_field_poly(f)
    result = None
    while i:
        if i & 1:
            result = base if result is None else mul_reduced(result, base)
        i >>= 1
        if i:
            base = mul_reduced(base, base)
    return result


def substitute_monomial(f: SparsePoly, r: int) -> SparsePoly:
    """f(x^r) reduced mod x^q - x."""
    if r < 1:
        raise ValueError("r must be >= 1")
    q = f.field.q
    return SparsePoly.from_terms(f.field, [(reduce_exponent(t * r, q), c) for t, c in f.terms])


def evaluate(f: SparsePoly, x: int) -> int:
    F = f.field
    acc = 0
    for t, c in f.terms:
        acc = F.add(acc, F.mul(c, F.pow(x, t)))
    return acc


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = out * _small_binom(ni, ki, p) % p
        n //= p
        k //= p
    return out


def _small_binom(n: int, k: int, p: int) -> int:
    # n < p here, so every denominator factor is invertible
    k = min(k, n - k)
    if n < 512:
        return comb(n, k) % p
    num = den = 1
    for j in range(k):
        num = num * (n - j) % p
        den = den * (j + 1) % p
    return num * pow(den, -1, p) % p


def binom_row_mod_p(e: int, p: int) -> list[int]:
    """[C(e, i) mod p for i in 0..e]."""
    if e < p:
        row = [1] * (e + 1)
        for i in range(e):
            row[i + 1] = row[i] * (e - i) % p * pow(i + 1, -1, p) % p
        return row
    return [binom_mod_p(e, i, p) for i in range(e + 1)]


def binomial_power_terms(n: int, d: int, a: int, e: int, field: FieldDesc) -> list[tuple[int, int]]:
    """Unreduced terms of (x^n (x^d + a))^e.

    Term i has exponent n*e + d*i and coefficient C(e, i) * a^(e - i);
    coefficients that vanish mod p are left out.
    """
    if e < 1 or n < 1 or d < 1 or a == 0:
        raise ValueError("need n, d, e >= 1 and a != 0")
    F = field
    row = binom_row_mod_p(e, F.p)
    out = []
    for i, b in enumerate(row):
        if b:
            out.append((n * e + d * i, F.mul(b, F.pow(a, e - i))))
    return out


def binomial_top_coefficient(n: int, d: int, a: int, e: int, field: FieldDesc) -> int:
    """Coefficient of x^(q-1) in the reduction of (x^n (x^d + a))^e.

    Only terms whose unreduced exponent is a positive multiple of q - 1
    contribute, so this avoids building the full power.
    """
    F = field
    acc = 0
    for i, b in _top_terms(n, d, e, F.q, F.p):
        acc = F.add(acc, F.mul(b, F.pow(a, e - i)))
    return acc


@functools.lru_cache(maxsize=4096)
def _top_terms(n: int, d: int, e: int, q: int, p: int) -> tuple[tuple[int, int], ...]:
    N = q - 1
    out = []
    for i in range(e + 1):
        if (n * e + d * i) % N == 0:
            b = binom_mod_p(e, i, p)
            if b:
                out.append((i, b))
    return tuple(out)
