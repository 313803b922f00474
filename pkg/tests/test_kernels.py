"""Compiled and numpy kernels must agree exactly."""

import random

import numpy as np
import pytest

from permbin import kernels
from permbin.poly import reduce_mod_field_poly

from conftest import field
from test_poly import random_poly

BACKENDS = kernels.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")

ORDERS = [3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 31, 32, 49, 64, 97, 128, 243]


def _args(f):
    r = reduce_mod_field_poly(f)
    return (np.array([t for t, _ in r.terms], dtype=np.int64), np.array([c for _, c in r.terms], dtype=np.int64))


def test_selected_backend_is_known():
    assert kernels.BACKEND in BACKENDS


@needs_both
@pytest.mark.parametrize("q", ORDERS)
def test_binomial_is_perm_agree(q):
    F = field(q)
    t = F.tables
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = random.Random(q)
    for _ in range(200):
        n = rng.randint(1, 2 * q)
        m = n + rng.randint(1, q)
        la = rng.randint(0, q - 2)
        assert bool(py.binomial_is_perm(t, n, m, la)) == bool(cy.binomial_is_perm(t, n, m, la))


@needs_both
@pytest.mark.parametrize("q", ORDERS)
def test_sparse_values_and_hermite_agree(q):
    F = field(q)
    t = F.tables
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = random.Random(q + 1)
    for _ in range(15):
        f = random_poly(F, rng)
        exps, coefs = _args(f)
        assert py.sparse_values(t, exps, coefs).tolist() == cy.sparse_values(t, exps, coefs).tolist()
        assert tuple(py.hermite_scan(t, exps, coefs, q - 2)) == tuple(cy.hermite_scan(t, exps, coefs, q - 2))


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_sparse_values_match_evaluate(name):
    impl = BACKENDS[name]
    for q in (5, 8, 9, 16):
        F = field(q)
        rng = random.Random(q)
        for _ in range(10):
            f = random_poly(F, rng)
            exps, coefs = _args(f)
            assert impl.sparse_values(F.tables, exps, coefs).tolist() == [f(x) for x in F.elements()]
