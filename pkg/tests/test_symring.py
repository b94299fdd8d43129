import random
from fractions import Fraction

import pytest

from adebps.symring import (
    EulerClass,
    LaurentPoly,
    PointClassElem,
    RatFn,
    VirtualCharacter,
    dualize,
    euler_class,
    expfactor,
    integrate_point_class,
    to_polynomial,
)


def poly(d):
    return LaurentPoly(d)


class TestExpfactor:
    def test_negative_weight(self):
        assert expfactor(-10) == poly({0: 1, -10: -1})

    def test_zero_weight_is_zero(self):
        assert not expfactor(0)
        assert expfactor(0) == poly({})

    def test_positive_weight(self):
        assert expfactor(3) == poly({0: 1, 3: -1})


class TestLaurentPoly:
    def test_no_zero_coefficients_stored(self):
        p = poly({2: 1}) - poly({2: 1})
        assert p.coeffs == {}

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            LaurentPoly({0: 0.5})

    def test_product(self):
        got = expfactor(-6) * expfactor(-2)
        assert got == poly({0: 1, -2: -1, -6: -1, -8: 1})

    def test_render(self):
        assert str(poly({0: 1, 3: -1})) == "1 - mu^3"
        assert str(poly({-11: 1, -10: -1, -7: 1, -6: -1, -2: -1, 0: 1})) == (
            "mu^-11 - mu^-10 + mu^-7 - mu^-6 - mu^-2 + 1"
        )
        assert str(poly({2: 2})) == "2*mu^2"
        assert str(poly({0: Fraction(1, 2)})) == "1/2"
        assert str(LaurentPoly()) == "0"

    def test_evaluate(self):
        p = expfactor(-2)
        assert p.evaluate(Fraction(2)) == Fraction(3, 4)
        with pytest.raises(ZeroDivisionError):
            p.evaluate(Fraction(0))


class TestRatFn:
    def test_self_division(self):
        u = RatFn(expfactor(1), expfactor(1))
        assert u == RatFn(1)
        assert u.is_polynomial

    def test_two_summand_character(self):
        a = RatFn(expfactor(-10) * expfactor(3) * expfactor(-1), expfactor(4))
        b = RatFn(expfactor(-6) * expfactor(-5) * expfactor(-1), expfactor(-4))
        got = a + b
        assert got == RatFn(poly({-11: 1, -10: -1, -7: 1, -6: -1, -2: -1, 0: 1}))

    def test_canonical_denominator_from_laurent(self):
        u = RatFn(1, poly({-3: 1, -2: -1}))
        assert u.den == poly({0: 1, 1: -1})
        assert u.num == poly({3: 1})

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            RatFn(1) / RatFn(0)
        with pytest.raises(ZeroDivisionError):
            RatFn(1, 0)

    def test_render(self):
        u = RatFn(1, expfactor(1))
        assert str(u) == "(1) / (1 - mu^1)"


class TestToPolynomial:
    def test_exact_division(self):
        u = RatFn(expfactor(-10), expfactor(-5))
        assert to_polynomial(u) == VirtualCharacter({0: 1, -5: 1})

    def test_non_polynomial_rejected(self):
        with pytest.raises(ValueError, match="not a polynomial"):
            to_polynomial(RatFn(1, expfactor(1)))

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError, match="non-integer"):
            to_polynomial(RatFn(LaurentPoly({0: Fraction(1, 2)})))

    def test_embedding_roundtrip(self):
        rng = random.Random(7)
        for _ in range(100):
            p = LaurentPoly({rng.randrange(-12, 13): rng.randrange(-5, 6) for _ in range(4)})
            assert to_polynomial(RatFn(p)).to_laurent() == p


class TestDualize:
    def test_golden_character(self):
        ch = poly({-11: 1, -10: -1, -7: 1, -6: -1, -2: -1, 0: 1})
        assert dualize(ch) == poly({0: 1, 2: -1, 6: -1, 7: 1, 10: -1, 11: 1})

    def test_unit_fixed(self):
        assert dualize(LaurentPoly.one()) == LaurentPoly.one()

    def test_involution_and_homomorphism(self):
        rng = random.Random(11)
        for _ in range(300):
            p = LaurentPoly({rng.randrange(-12, 13): rng.randrange(-4, 5) for _ in range(3)})
            q = LaurentPoly({rng.randrange(-12, 13): rng.randrange(-4, 5) for _ in range(3)})
            assert dualize(dualize(p)) == p
            assert dualize(p * q) == dualize(p) * dualize(q)
            assert dualize(p + q) == dualize(p) + dualize(q)

    def test_ratfn_involution(self):
        u = RatFn(expfactor(-6) * expfactor(3), expfactor(4) * expfactor(-1))
        assert dualize(dualize(u)) == u


class TestPointClass:
    def test_multiplication_rule(self):
        z = PointClassElem(2, 3) * PointClassElem(5, 7)
        assert z == PointClassElem(10, 29)

    def test_x_squared_is_zero(self):
        x = PointClassElem(0, 1)
        assert x * x == PointClassElem(0, 0)

    def test_inverse(self):
        z = PointClassElem(RatFn(expfactor(-1)), RatFn(LaurentPoly.monomial(-1, 2)))
        assert z * z.inverse() == PointClassElem(1, 0)
        with pytest.raises(ZeroDivisionError):
            PointClassElem(0, 1).inverse()

    def test_integrate_kills_base(self):
        assert integrate_point_class(PointClassElem(RatFn(expfactor(2)), 0)) == RatFn(0)

    def test_integrate_pure_point(self):
        assert integrate_point_class(PointClassElem(0, 5)) == RatFn(5)

    def test_curve_pushdown_value(self):
        # (1 - mu^-6) * (1 - mu^-1)^3 * [(1 + x)/(1 - mu^-1) + 2x mu^-1/(1 - mu^-1)^2]
        # integrates to mu^-8 - mu^-6 - mu^-2 + 1.
        pref = RatFn(expfactor(-6) * expfactor(-1) ** 3)
        inv = (1 - PointClassElem.exponential(-1, 2)).inverse()
        got = pref * integrate_point_class((1 + PointClassElem(0, 1)) * inv)
        assert got == RatFn(poly({-8: 1, -6: -1, -2: -1, 0: 1}))

    def test_linearity(self):
        rng = random.Random(3)
        for _ in range(100):
            a = PointClassElem(rng.randrange(-4, 5), rng.randrange(-4, 5))
            b = PointClassElem(rng.randrange(-4, 5), rng.randrange(-4, 5))
            assert integrate_point_class(a) + integrate_point_class(b) == integrate_point_class(a + b)


class TestEulerClass:
    def test_double_weight_two(self):
        assert euler_class(VirtualCharacter({2: 2})) == EulerClass(Fraction(4), 2)

    def test_empty_character(self):
        assert euler_class(VirtualCharacter()) == EulerClass(Fraction(1), 0)

    def test_mixed_weights(self):
        assert euler_class(VirtualCharacter({1: 1, 3: 1})) == EulerClass(Fraction(3), 2)

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            euler_class(VirtualCharacter({1: -1}))

    def test_weight_zero_rejected(self):
        with pytest.raises(ValueError, match="weight-0"):
            euler_class(VirtualCharacter({0: 1}))

    def test_render(self):
        assert str(EulerClass(Fraction(4), 2)) == "4*t^2"
        assert str(EulerClass(Fraction(1), 1)) == "t"
        assert str(EulerClass(Fraction(1), 0)) == "1"


def random_poly(rng, terms=4, wmax=12, cmax=4):
    return LaurentPoly(
        [(rng.randrange(-wmax, wmax + 1), rng.randrange(-cmax, cmax + 1)) for _ in range(terms)]
    )


def random_ratfn(rng):
    num = random_poly(rng)
    den = LaurentPoly.zero()
    while not den:
        den = random_poly(rng, terms=3)
    return RatFn(num, den)


def test_laurent_ring_axioms_randomized():
    rng = random.Random(2024)
    for _ in range(1000):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + LaurentPoly.zero() == p
        assert p * LaurentPoly.one() == p


def test_ratfn_field_axioms_randomized():
    rng = random.Random(99)
    for _ in range(400):
        u, v, w = (random_ratfn(rng) for _ in range(3))
        assert u + v == v + u
        assert (u + v) + w == u + (v + w)
        assert u * v == v * u
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w
        if v:
            assert (u / v) * v == u
            assert v * (1 / v) == RatFn(1)
        assert u - u == RatFn(0)


def test_ratfn_pointwise_evaluation_oracle():
    # Arithmetic on fractions of expfactor products must agree with exact
    # pointwise evaluation at a rational that avoids the poles.
    rng = random.Random(5)
    points = [Fraction(3, 2), Fraction(5, 3), Fraction(7, 2), Fraction(-4, 3)]
    for _ in range(250):
        factors = [expfactor(rng.randrange(-8, 9)) for _ in range(3)]
        num = factors[0] * factors[1]
        den = factors[2]
        if not den:
            continue
        u = RatFn(num, den)
        v = random_ratfn(rng)
        expr = u * v + u
        for x in points:
            try:
                lhs = expr.evaluate(x)
            except ZeroDivisionError:
                continue
            if den.evaluate(x) == 0 or v.den.evaluate(x) == 0:
                continue
            rhs = (num.evaluate(x) / den.evaluate(x)) * v.evaluate(x) + num.evaluate(x) / den.evaluate(x)
            assert lhs == rhs
