"""Shared builders and independent oracles for the test suite.

The oracle functions here deliberately avoid the library's clever paths:
subsequences are extracted from materialized prefixes, word polynomials come
from fully expanded words, and coprimality is decided by Euclid on explicit
polynomials.  They exist to check the fast machinery against brute force.
"""

import pytest

from laurexp.ffield import Polynomial, finite_field, poly_gcd
from laurexp.fixtures import BUILTIN
from laurexp.pipeline import build_stream
from laurexp.wordpoly import word_poly

FIXTURE_NAMES = ("ex1", "ex2", "ex3", "ex4", "thue-morse", "mahler")


@pytest.fixture(scope="session")
def streams():
    return {name: build_stream(BUILTIN[name]) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def reports():
    from laurexp.pipeline import analyze_problem
    return {name: analyze_problem(BUILTIN[name]) for name in FIXTURE_NAMES}


# ---------------------------------------------------------------------------
# brute-force oracles

def brute_kernel_count(seq, base, max_level, compare_len):
    """Distinct subsequences (seq[base^n i + r]) by prefix comparison.

    Necessary-but-heuristic: prefix comparison can only undercount, never
    overcount, so it lower-bounds the true kernel size.
    """
    seen = set()
    for n in range(max_level + 1):
        step = base ** n
        for r in range(step):
            seen.add(tuple(seq[step * i + r] for i in range(compare_len)))
    return len(seen)


def brute_subsequence(seq, base, n, r, count):
    step = base ** n
    return tuple(seq[step * i + r] for i in range(count))


def expanded_level_polys(stream, witness, n):
    """P over the coded level-n words, by full expansion (no matrices)."""
    sigma, coding = stream.morphism, stream.coding
    field = coding.field
    p_u = word_poly(coding.map(sigma.iterate(witness.u, n)), field)
    p_v = word_poly(coding.map(sigma.iterate(witness.v, n)), field)
    return p_u, p_v


def brute_coprime(stream, witness, n):
    """Euclid-based coprimality of the level-n fraction.

    The denominator is T^(k b^n - 1) (T^l - 1)^(b^n) in characteristic p, so
    gcd(P_n, Q_n) = 1 iff P_n avoids 0 (when k > 0) and shares no factor with
    T^l - 1; the latter gcd is computed literally on the expanded P_n.
    """
    sigma, coding = stream.morphism, stream.coding
    field = coding.field
    b, k, ell = sigma.b, witness.k, witness.l
    p_u, p_v = expanded_level_polys(stream, witness, n)
    cyc_n = Polynomial.monomial(field, ell * b ** n) - Polynomial.one(field)
    if k == 0:
        p_n = p_v.shift(1)
    else:
        p_n = p_u * cyc_n + p_v
        if not p_n.coeff(0):
            return False  # T divides both P_n and Q_n
    small_cyc = Polynomial.monomial(field, ell) - Polynomial.one(field)
    return poly_gcd(p_n, small_cyc).degree == 0


def brute_gcd_literal(stream, witness, n):
    """Fully literal gcd(P_n, Q_n); only sane for small levels."""
    sigma, coding = stream.morphism, stream.coding
    field = coding.field
    b, k, ell = sigma.b, witness.k, witness.l
    p_u, p_v = expanded_level_polys(stream, witness, n)
    cyc_n = Polynomial.monomial(field, ell * b ** n) - Polynomial.one(field)
    if k == 0:
        p_n, q_n = p_v.shift(1), cyc_n
    else:
        p_n = p_u * cyc_n + p_v
        q_n = cyc_n.shift(k * b ** n - 1)
    return poly_gcd(p_n, q_n)
