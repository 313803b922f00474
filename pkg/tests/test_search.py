from math import gcd

import pytest

from permbin import search
from permbin.binom import Binomial, normalize_n
from permbin.errors import BadParameters, FieldTooLarge, TheoremViolation
from permbin.field import make_field, primes_between
from permbin.permtest import binomial_permutes, hermite_exponent_check
from permbin.poly import binomial_power_terms
from permbin.search import (
    boundary_report,
    build_refutation_plan,
    canonical_binomials,
    degree_multiset,
    enumerate_perm_binomials,
    refute,
    verify_mersenne,
    verify_theorem_main,
)

from conftest import field


def key(records):
    return [(r.n, r.k, r.a) for r in records]


def brute_list(F):
    """Independent brute force through the direct tester."""
    N = F.q - 1
    return [
        (n, k, a)
        for n in range(1, N)
        for k in range(1, N - n + 1)
        for a in range(1, F.q)
        if binomial_permutes(F, n, k, a)
    ]


def test_f7_contains_x4_plus_3x(F7):
    recs = enumerate_perm_binomials(F7)
    assert key(recs) == brute_list(F7)
    hit = [r for r in recs if (r.n, r.k, r.a) == (1, 3, 3)]
    assert hit and hit[0].d == 3 and hit[0].gcd == 3 and not hit[0].trivial
    assert {r.d for r in recs} == {3}


def test_small_primes_boundary():
    rep = boundary_report()
    for p, recs in rep.items():
        assert key(recs) == brute_list(make_field(p))
        assert key(recs) == key(enumerate_perm_binomials(make_field(p)))


def test_mersenne_f8_empty():
    assert enumerate_perm_binomials(make_field(2, 3)) == []


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32] + primes_between(3, 29))
def test_pruned_equals_brute(q):
    F = field(q)
    pruned = enumerate_perm_binomials(F, use_pruning=True)
    brute = enumerate_perm_binomials(F, use_pruning=False)
    assert key(pruned) == key(brute) == brute_list(F)
    for r in pruned:
        assert r.verdict and r.d == gcd(r.k, q - 1)
        c = r.canonical
        assert c.base.k == c.d == r.d and c.base.a == r.a
        assert binomial_permutes(F, c.base.n, c.d, c.base.a)


def test_enumeration_limit():
    with pytest.raises(FieldTooLarge):
        enumerate_perm_binomials(make_field(65537))


def test_verify_theorem_small_range():
    rep = verify_theorem_main(7, 7, workers=1)
    assert rep.verified and rep.orders == [7]
    assert set(rep.gcd_histogram) == {3}
    assert rep.scanned_total == search.space_size(7)
    with pytest.raises(BadParameters):
        verify_theorem_main(5, 11)


def test_verify_theorem_deterministic_across_workers():
    one = verify_theorem_main(7, 60, workers=1).as_row()
    two = verify_theorem_main(7, 60, workers=2).as_row()
    assert one == two
    assert one["verified"]


def test_violation_is_raised(monkeypatch):
    monkeypatch.setattr(search, "FORBIDDEN_GCDS", frozenset({3}))
    with pytest.raises(TheoremViolation) as exc:
        verify_theorem_main(7, 7, workers=1)
    assert exc.value.record.gcd == 3
    rep = verify_theorem_main(7, 7, workers=1, strict=False)
    assert not rep.verified and rep.violations


def test_verify_mersenne():
    rep = verify_mersenne([8, 32], workers=1)
    assert rep.verified and rep.hits == 0
    with pytest.raises(BadParameters):
        verify_mersenne([9])
    with pytest.raises(BadParameters):
        verify_mersenne([6])


def test_plan_examples():
    assert build_refutation_plan(11, 2).candidates == (4,)
    assert build_refutation_plan(11, 2).ell == 5
    assert build_refutation_plan(13, 2).candidates == (6,)
    plan = build_refutation_plan(13, 4)
    assert plan.ell == 3 and plan.candidates == (4,)
    with pytest.raises(BadParameters):
        build_refutation_plan(11, 4)
    with pytest.raises(BadParameters):
        build_refutation_plan(5, 2)
    with pytest.raises(BadParameters):
        build_refutation_plan(13, 3)


@pytest.mark.parametrize("p", primes_between(7, 400))
def test_plan_table(p):
    plan = build_refutation_plan(p, 2)
    ell = (p - 1) // 2
    assert plan.candidates == ((ell - 1,) if ell % 2 else (ell,))
    if p % 4 != 1:
        return
    plan = build_refutation_plan(p, 4)
    if p % 8 == 1:
        ell = (p - 1) // 8
        assert plan.ell == ell
        assert plan.candidates == ((2 * ell,) if ell % 2 == 0 else (2 * ell + 2, 8))
    else:
        ell = (p - 1) // 4
        assert plan.ell == ell
        expect = (ell - 1,) if ell % 4 == 1 else tuple(dict.fromkeys((ell + 1, 4)))
        assert plan.candidates == expect


def test_refute_p11():
    F = make_field(11)
    for a in range(1, 11):
        r = refute(Binomial(F, 1, 2, a))
        assert (r.exponent, r.coefficient) == (4, 4 * a % 11)
        e, c = r
        assert hermite_exponent_check(Binomial(F, 1, 2, a).to_poly(), e) == c


def test_refute_p13_cube_argument(F13):
    for a in range(1, 13):
        r = refute(Binomial(F13, 3, 4, a))
        assert (r.exponent, r.coefficient) == (4, (a**4 + 4 * a) % 13)
        assert r.coefficient != 0


def test_refute_p13_pretransform(F13):
    for a in range(1, 13):
        b = Binomial(F13, 5, 4, a)
        r = refute(b)
        assert r.pretransformed and r.tested == Binomial(F13, 3, 4, F13.inv(a))
        assert r.exponent == 4
        assert hermite_exponent_check(b.to_poly(), 4) is not None


def test_refute_p29_ell_plus_one():
    F = make_field(29)  # 29 = 4*7 + 1
    ell = 7
    for b in canonical_binomials(29, 4):
        h = hermite_exponent_check(b.to_poly(), ell + 1)
        r = refute(b)
        if b.n not in (ell, ell - 4):
            assert h is not None
            assert (r.exponent, r.coefficient) == (8, h)
        else:
            assert r.exponent in (8, 4)
            assert hermite_exponent_check(b.to_poly(), r.exponent) == r.coefficient


def test_refute_rejects_non_canonical(F13):
    with pytest.raises(BadParameters):
        refute(Binomial(F13, 9, 4, 1))  # 9 = 3 (mod 3) normalizes to 1


@pytest.mark.parametrize("p", primes_between(7, 61))
def test_refute_matches_full_powering(p):
    for d in (2, 4):
        if (p - 1) % d:
            continue
        plan = build_refutation_plan(p, d)
        for b in canonical_binomials(p, d):
            assert b == normalize_n(b)
            r = refute(b)
            assert r.exponent in plan.candidates
            assert hermite_exponent_check(r.tested.to_poly(), r.exponent) == r.coefficient
            assert hermite_exponent_check(b.to_poly(), r.exponent) is not None
            if d == 2:
                assert r.exponent == plan.candidates[0]


def test_degree_multiset_examples():
    ds = degree_multiset(1, 2, 4, 11)
    assert ds.exponents == (4, 6, 8, 10, 12) and ds.multiples == 1
    ds = degree_multiset(3, 4, 4, 13)
    assert ds.exponents == (12, 16, 20, 24, 28) and ds.multiples == 2
    for p in (7, 11, 13):
        for e in range(1, p):
            assert len(degree_multiset(1, 2, e, p).exponents) == e + 1


def test_degree_multiset_matches_power_terms():
    for p in primes_between(3, 31):
        F = make_field(p)
        for n in range(1, 6):
            for d in (1, 2, 4):
                for e in range(1, 2 * p):
                    got = degree_multiset(n, d, e, p).exponents
                    assert got == tuple(t for t, _ in binomial_power_terms(n, d, 1, e, F))
