"""Permutation tests: direct evaluation and Hermite's criterion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from . import kernels
from .field import TABLE_LIMIT, FieldDesc
from .poly import SparsePoly, evaluate, pow_reduced, reduce_mod_field_poly


@dataclass(frozen=True)
class CollidingPair:
    x: int
    y: int


@dataclass(frozen=True)
class RootCount:
    count: int


@dataclass(frozen=True)
class HermiteExponent:
    exponent: int
    coefficient: int  # the nonzero x^(q-1) coefficient of the reduced power


Witness = Union[CollidingPair, RootCount, HermiteExponent]


@dataclass(frozen=True)
class PermVerdict:
    is_permutation: bool
    method: Literal["direct", "hermite"]
    witness: Witness | None = None

    def __post_init__(self):
        if self.is_permutation and self.witness is not None:
            raise ValueError("a permutation carries no witness")


def _kernel_args(f: SparsePoly):
    r = reduce_mod_field_poly(f)
    exps = np.array([t for t, _ in r.terms], dtype=np.int64)
    coefs = np.array([c for _, c in r.terms], dtype=np.int64)
    return exps, coefs


def values(f: SparsePoly) -> list[int]:
    """f evaluated at every element, indexed by rep."""
    F = f.field
    if F.q > TABLE_LIMIT:
        return [evaluate(f, x) for x in F.elements()]
    exps, coefs = _kernel_args(f)
    return kernels.sparse_values(F.tables, exps, coefs).tolist()


def is_permutation_direct(f: SparsePoly) -> PermVerdict:
    """Evaluate everywhere; the witness is the first repeat in element order."""
    first_seen: dict[int, int] = {}
    for x, v in enumerate(values(f)):
        if v in first_seen:
            return PermVerdict(False, "direct", CollidingPair(first_seen[v], x))
        first_seen[v] = x
    return PermVerdict(True, "direct")


def binomial_permutes(field: FieldDesc, n: int, k: int, a: int) -> bool:
    """Direct test of x^n (x^k + a), a != 0, without building a SparsePoly."""
    return bool(kernels.binomial_is_perm(field.tables, n, n + k, field.dlog(a)))


def count_roots(f: SparsePoly) -> int:
    return sum(1 for v in values(f) if v == 0)


def hermite_exponent_check(f: SparsePoly, i: int) -> int | None:
    """Nonzero x^(q-1) coefficient of f^i mod x^q - x, or None if deg < q - 1."""
    q = f.field.q
    if not 0 < i < q - 1:
        raise ValueError(f"exponent {i} outside (0, {q - 1})")
    c = pow_reduced(f, i).coefficient(q - 1)
    return c or None


def first_hermite_violation(f: SparsePoly, imax: int | None = None) -> HermiteExponent | None:
    """Smallest 0 < i <= imax (default q - 2) whose reduced power reaches degree q - 1."""
    F: FieldDesc = f.field
    if imax is None:
        imax = F.q - 2
    if F.q > TABLE_LIMIT:
        for i in range(1, imax + 1):
            c = hermite_exponent_check(f, i)
            if c is not None:
                return HermiteExponent(i, c)
        return None
    exps, coefs = _kernel_args(f)
    i, c = kernels.hermite_scan(F.tables, exps, coefs, imax)
    return HermiteExponent(int(i), int(c)) if i else None


def is_permutation_hermite(f: SparsePoly) -> PermVerdict:
    """Hermite's criterion over every 0 < i < q - 1, then the unique-root condition.

    Exponents divisible by p are not skipped. Over F_2 there is no exponent
    to check and the direct test is used instead.
    """
    if f.field.q == 2:
        return is_permutation_direct(f)
    w = first_hermite_violation(f)
    if w is not None:
        return PermVerdict(False, "hermite", w)
    roots = count_roots(f)
    if roots != 1:
        return PermVerdict(False, "hermite", RootCount(roots))
    return PermVerdict(True, "hermite")
