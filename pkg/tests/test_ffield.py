import random

import pytest

from laurexp.ffield import (FieldMismatchError, Polynomial, QuotientRing,
                            cyclotomic_cosets, factor_unity, finite_field,
                            poly_gcd, poly_str, quotient_eval, unity_root_plan)

F2 = finite_field(2)
F3 = finite_field(3)
F5 = finite_field(5)


def P(field, *ints):
    return Polynomial.from_ints(field, ints)


def random_poly(rng, field, max_deg):
    return Polynomial.from_ints(
        field, [rng.randrange(field.p) for _ in range(rng.randint(0, max_deg + 1))])


class TestFieldArithmetic:
    def test_prime_field_tables(self):
        for field in (F2, F3, F5):
            p = field.p
            for a in range(p):
                for b in range(p):
                    assert int(field.element(a) + field.element(b)) == (a + b) % p
                    assert int(field.element(a) * field.element(b)) == (a * b) % p

    def test_inverses(self):
        for field in (F2, F3, F5, finite_field(2, 2), finite_field(3, 2)):
            for elt in field.elements():
                if elt:
                    assert elt * elt.inverse() == field.one

    def test_extension_field_frobenius(self):
        field = finite_field(2, 2)
        assert field.q == 4
        for elt in field.elements():
            assert elt + elt == field.zero
            # x -> x^4 is the identity on F_4
            assert (elt * elt) * (elt * elt) == elt

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldMismatchError):
            F2.one + F3.one

    def test_not_prime(self):
        with pytest.raises(ValueError):
            finite_field(6)


class TestPolyGcd:
    def test_char2_square(self):
        # T^2+1 = (T+1)^2 in characteristic 2
        assert poly_gcd(P(F2, 1, 0, 1), P(F2, 1, 1)) == P(F2, 1, 1)

    def test_gcd_with_zero_is_monic(self):
        poly = P(F5, 0, 2, 4)
        expected = poly.scale(poly.lead.inverse())
        assert poly_gcd(poly, Polynomial.zero(F5)) == expected
        assert poly_gcd(Polynomial.zero(F5), poly) == expected

    def test_euclid_over_f5(self):
        # gcd(T^3-1, T^2-1) = T-1, worked by hand
        a = P(F5, 4, 0, 0, 1)
        b = P(F5, 4, 0, 1)
        assert poly_gcd(a, b) == P(F5, 4, 1)

    def test_gcd_divides_and_is_maximal(self):
        rng = random.Random(7)
        for field in (F2, F3, F5):
            for _ in range(60):
                common = random_poly(rng, field, 3)
                a = random_poly(rng, field, 4) * common
                b = random_poly(rng, field, 4) * common
                g = poly_gcd(a, b)
                if g.is_zero():
                    assert a.is_zero() and b.is_zero()
                    continue
                assert (a % g).is_zero() and (b % g).is_zero()
                # any common divisor divides the gcd
                if not common.is_zero():
                    assert (g % common.monic()).is_zero()

    def test_divmod_roundtrip(self):
        rng = random.Random(11)
        for _ in range(100):
            a = random_poly(rng, F3, 6)
            b = random_poly(rng, F3, 3)
            if b.is_zero():
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.is_zero() or r.degree < b.degree


class TestQuotientEval:
    def test_root_annihilates(self):
        assert quotient_eval(P(F3, 2, 0, 1), P(F3, 2, 1)).is_zero()

    def test_substitute_one(self):
        assert quotient_eval(P(F2, 1, 1, 1), P(F2, 1, 1)) == Polynomial.one(F2)

    def test_sum_of_coeffs_mod5(self):
        # T^6+2T^4+3T^2+T at T=1: 1+2+3+1 = 7 = 2 mod 5
        poly = P(F5, 0, 1, 3, 0, 2, 0, 1)
        assert quotient_eval(poly, P(F5, 4, 1)) == Polynomial(F5, (F5.element(2),))

    def test_constant_modulus_rejected(self):
        with pytest.raises(ValueError):
            quotient_eval(P(F2, 1, 1), P(F2, 1))

    def test_reduction_invariance(self):
        rng = random.Random(13)
        for field in (F2, F3, F5):
            h = Polynomial.from_ints(field, [1, 1, 1])  # degree-2 modulus
            for _ in range(40):
                p = random_poly(rng, field, 5)
                r = random_poly(rng, field, 4)
                assert quotient_eval(p * h + r, h) == quotient_eval(r, h)

    def test_quotient_ring_power(self):
        ring = QuotientRing(P(F3, 2, 1))  # T-1: evaluation at 1
        assert ring.t_power(10 ** 9) == ring.one


class TestUnityRootPlan:
    def test_ex3_plan(self):
        plan = unity_root_plan(6, F3, 3)
        assert (plan.ell_prime, plan.p_valuation, plan.t) == (2, 1, 1)
        assert sorted(poly_str(h) for h in plan.factors) == ["T+1", "T+2"]

    def test_ex4_plan(self):
        plan = unity_root_plan(5, F5, 5)
        assert (plan.ell_prime, plan.p_valuation, plan.t) == (1, 1, 1)
        assert [poly_str(h) for h in plan.factors] == ["T+4"]  # T-1 over F_5

    def test_trivial_plan(self):
        plan = unity_root_plan(1, F2, 4)
        assert (plan.ell_prime, plan.p_valuation, plan.t) == (1, 0, 1)
        assert [poly_str(h) for h in plan.factors] == ["T+1"]

    def test_base_must_be_power_of_p(self):
        with pytest.raises(ValueError):
            unity_root_plan(3, F2, 6)

    def test_plan_invariants(self):
        rng = random.Random(17)
        for _ in range(40):
            field = rng.choice((F2, F3, F5))
            ell = rng.randint(1, 24)
            base = field.p ** rng.randint(1, 3)
            plan = unity_root_plan(ell, field, base)
            assert plan.ell == plan.ell_prime * field.p ** plan.p_valuation
            assert plan.ell_prime % field.p != 0 or plan.ell_prime == 1
            if plan.ell_prime > 1:
                assert pow(base, plan.t, plan.ell_prime) == 1
                for smaller in range(1, plan.t):
                    assert pow(base, smaller, plan.ell_prime) != 1
            product = Polynomial.one(field)
            for h in plan.factors:
                product = product * h
            target = (Polynomial.monomial(field, plan.ell_prime)
                      - Polynomial.one(field))
            assert product == target
            assert len(set(plan.factors)) == len(plan.factors)
            minus_one = Polynomial.from_ints(field, [field.p - 1, 1])
            assert minus_one in plan.factors  # T-1 is always a factor

    def test_factor_degrees_match_cosets(self):
        for field, n in ((F2, 15), (F2, 9), (F3, 8), (F5, 12), (F2, 35)):
            factors = factor_unity(field, n)
            cosets = cyclotomic_cosets(n, field.q)
            assert sorted(h.degree for h in factors) == sorted(
                len(c) for c in cosets)
            product = Polynomial.one(field)
            for h in factors:
                product = product * h
            assert product == Polynomial.monomial(field, n) - Polynomial.one(field)
