"""Permutation binomials over finite fields.

Direct and Hermite-criterion permutation tests, verdict-preserving
reductions of x^n (x^k + a), and an exhaustive search confirming that
gcd(m - n, p - 1) never lands in {1, 2, 4} over a range of primes.
"""

from .binom import (
    Binomial,
    CanonicalBinomial,
    canonicalize_k,
    degree_gcd_filter,
    find_multiplier,
    is_trivial,
    normalize_n,
    scale_a,
)
from .field import FieldDesc, make_field
from .kernels import BACKEND
from .permtest import PermVerdict, is_permutation_direct, is_permutation_hermite
from .poly import SparsePoly, pow_reduced, reduce_mod_field_poly
from .search import (
    build_refutation_plan,
    enumerate_perm_binomials,
    refute,
    verify_mersenne,
    verify_theorem_main,
)

__version__ = "0.1.0"
