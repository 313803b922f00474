import random
from math import gcd

import pytest

from permbin.field import make_field
from permbin.permtest import (
    CollidingPair,
    HermiteExponent,
    PermVerdict,
    RootCount,
    binomial_permutes,
    first_hermite_violation,
    hermite_exponent_check,
    is_permutation_direct,
    is_permutation_hermite,
)
from permbin.poly import SparsePoly, evaluate

from conftest import PRIME_POWERS_31, field
from test_poly import random_poly

ORDERS_121 = [q for q in range(2, 122) if q in {
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
    53, 59, 61, 64, 67, 71, 73, 79, 81, 83, 89, 97, 101, 103, 107, 109, 113, 121}]


def test_direct_examples(F7):
    F5, F3 = make_field(5), make_field(3)
    assert is_permutation_direct(SparsePoly.monomial(F5, 3)).is_permutation
    v = is_permutation_direct(SparsePoly.monomial(F3, 2))
    assert not v.is_permutation and v.witness == CollidingPair(1, 2)
    f = SparsePoly.from_terms(F7, [(4, 1), (1, 3)])
    assert [(x**4 + 3 * x) % 7 for x in range(7)] == [0, 4, 1, 6, 2, 3, 5]
    assert is_permutation_direct(f) == PermVerdict(True, "direct")


def test_hermite_examples(F13):
    F11 = make_field(11)
    v = is_permutation_hermite(SparsePoly.binomial(F11, 1, 2, 1))
    assert v == PermVerdict(False, "hermite", HermiteExponent(4, 4))
    assert not is_permutation_direct(SparsePoly.binomial(F11, 1, 2, 1)).is_permutation
    assert is_permutation_hermite(SparsePoly.monomial(make_field(5), 3)).is_permutation
    for a in range(1, 13):
        v = is_permutation_hermite(SparsePoly.binomial(F13, 3, 4, a))
        assert v.witness == HermiteExponent(4, (a**4 + 4 * a) % 13)


def test_root_count_witness(F7):
    assert is_permutation_hermite(SparsePoly.monomial(F7, 1)).is_permutation
    assert is_permutation_hermite(SparsePoly.monomial(F7, 6)).witness == HermiteExponent(1, 1)
    # over F_3 the only exponent is i = 1; a nonzero constant passes it and has no root
    F3 = make_field(3)
    v = is_permutation_hermite(SparsePoly.from_terms(F3, [(0, 1)]))
    assert v == PermVerdict(False, "hermite", RootCount(0))


def test_hermite_exponent_check(F13):
    cubes = {pow(c, 3, 13) for c in range(1, 13)}
    assert cubes == {1, 5, 8, 12}
    assert (-4) % 13 not in cubes
    for a in range(1, 13):
        f = SparsePoly.binomial(F13, 3, 4, a)
        assert hermite_exponent_check(f, 4) == (a**4 + 4 * a) % 13 != 0
    for q in (5, 8, 13):
        F = field(q)
        x = SparsePoly.monomial(F, 1)
        assert all(hermite_exponent_check(x, i) is None for i in range(1, q - 1))
    with pytest.raises(ValueError):
        hermite_exponent_check(SparsePoly.monomial(F13, 1), 12)


def test_verdict_invariant():
    with pytest.raises(ValueError):
        PermVerdict(True, "direct", CollidingPair(0, 1))


def test_f2_falls_back_to_direct():
    F2 = make_field(2)
    assert is_permutation_hermite(SparsePoly.monomial(F2, 1)) == PermVerdict(True, "direct")


@pytest.mark.parametrize("q", ORDERS_121)
def test_monomial_law(q):
    F = field(q)
    for m in range(1, 2 * (q - 1) + 1):
        f = SparsePoly.monomial(F, m)
        expect = gcd(m, q - 1) == 1
        assert is_permutation_direct(f).is_permutation == expect
        assert is_permutation_hermite(f).is_permutation == expect


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_hermite_matches_direct_binomials(q):
    F = field(q)
    N = q - 1
    for n in range(1, N):
        for k in range(1, N - n + 1):
            for a in range(1, q):
                f = SparsePoly.binomial(F, n, k, a)
                direct = is_permutation_direct(f).is_permutation
                assert is_permutation_hermite(f).is_permutation == direct
                assert binomial_permutes(F, n, k, a) == direct


@pytest.mark.parametrize("q", PRIME_POWERS_31)
def test_hermite_witness_minimal_and_valid(q):
    F = field(q)
    rng = random.Random(7 * q)
    for _ in range(40):
        f = random_poly(F, rng)
        v = is_permutation_hermite(f)
        d = is_permutation_direct(f)
        assert v.is_permutation == d.is_permutation
        if isinstance(v.witness, HermiteExponent):
            i = v.witness.exponent
            assert 0 < i < q - 1
            assert hermite_exponent_check(f, i) == v.witness.coefficient
            assert all(hermite_exponent_check(f, j) is None for j in range(1, i))
        if isinstance(d.witness, CollidingPair):
            x, y = d.witness.x, d.witness.y
            assert x < y and evaluate(f, x) == evaluate(f, y)
            seen = [evaluate(f, z) for z in range(y)]
            assert len(set(seen)) == y


def test_first_violation_limit(F13):
    f = SparsePoly.binomial(F13, 3, 4, 1)
    assert first_hermite_violation(f, imax=3) is None
    assert first_hermite_violation(f).exponent == 4
