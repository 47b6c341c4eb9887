from __future__ import annotations

import random
from fractions import Fraction

import pytest

from core.errors import NonDivisibleError
from core.exact_algebra import (
    ONE,
    S,
    InfiniteLimit,
    Polynomial,
    RationalFunction,
    derivative,
    format_polynomial,
    limit_at_one,
    multiplicity_at_one,
    poly_arith,
    poly_gcd,
    ratfunc_arith,
    series_coefficients,
    shift_and_divide,
)

ONE_MINUS_S = Polynomial((1, -1))


def _random_poly(rng: random.Random, degree: int, nonzero_constant: bool = False) -> Polynomial:
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(degree + 1)]
    if nonzero_constant and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    return Polynomial(coeffs)


def _random_ratfunc(rng: random.Random) -> RationalFunction:
    return RationalFunction(
        _random_poly(rng, rng.randint(0, 3)),
        _random_poly(rng, rng.randint(0, 3), nonzero_constant=True),
    )


class TestPolynomial:
    def test_trailing_zeros_trimmed(self):
        assert Polynomial((1, 2, 0, 0)).coefficients == (Fraction(1), Fraction(2))
        assert Polynomial((0, 0)).is_zero
        assert Polynomial.zero().degree == -1

    def test_product_of_conjugates(self):
        assert Polynomial((1, 1)) * ONE_MINUS_S == Polynomial((1, 0, -1))

    def test_zero_is_additive_identity(self):
        a = Polynomial((0, Fraction(3, 2)))
        assert Polynomial.zero() + a == a
        assert a - a == Polynomial.zero()

    def test_format(self):
        quarter_sq = Fraction(1, 2) ** 2 * Fraction(1, 2) ** 2
        poly = Polynomial((1, -1, 0, 0, quarter_sq))
        assert format_polynomial(poly) == "1 - s + 1/16*s^4"
        assert str(Polynomial.zero()) == "0"
        assert str(Polynomial((0, -1))) == "-s"

    def test_coefficient_lookup(self):
        poly = Polynomial((1, 0, 0, 0, Fraction(1, 16)))
        assert poly[4] == Fraction(1, 16)
        assert poly[9] == 0

    def test_divmod_reconstructs(self):
        a = Polynomial((3, 0, 2, 5))
        b = Polynomial((1, 1))
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_gcd_is_monic(self):
        a = Polynomial((1, 0, -1)) * 3
        b = Polynomial((-1, 1)) * Polynomial((2, 1))
        assert poly_gcd(a, b) == Polynomial((-1, 1))

    def test_arith_dispatch(self):
        a, b = Polynomial((1, 2)), Polynomial((0, 1))
        assert poly_arith(a, b, "mul") == Polynomial((0, 1, 2))
        with pytest.raises(ValueError):
            poly_arith(a, b, "div")

    def test_powers(self):
        assert Polynomial((1, 1)) ** 0 == Polynomial.one()
        assert Polynomial((1, 1)) ** 2 == Polynomial((1, 2, 1))
        with pytest.raises(ValueError):
            Polynomial((1, 1)) ** -1

    def test_exact_divide(self):
        assert Polynomial((1, 0, -1)).exact_divide(ONE_MINUS_S) == Polynomial((1, 1))
        with pytest.raises(NonDivisibleError):
            Polynomial((1, 0, 1)).exact_divide(ONE_MINUS_S)


class TestShiftAndDivide:
    def test_single_factor(self):
        assert shift_and_divide(Polynomial((1, 0, -1)), 1) == Polynomial((-1, -1))

    def test_square(self):
        assert shift_and_divide(Polynomial((-1, 1)) ** 2, 2) == Polynomial.one()

    def test_not_divisible(self):
        with pytest.raises(NonDivisibleError):
            shift_and_divide(Polynomial((1, 1)), 1)

    def test_round_trip_on_random_polynomials(self):
        rng = random.Random(11)
        for _ in range(25):
            a = _random_poly(rng, rng.randint(0, 5))
            k = rng.randint(0, 3)
            assert shift_and_divide(a * Polynomial((-1, 1)) ** k, k) == a

    def test_multiplicity(self):
        assert multiplicity_at_one(Polynomial((-1, 1)) ** 3 * Polynomial((2, 1))) == 3
        assert multiplicity_at_one(Polynomial((1, 1))) == 0


class TestRationalFunction:
    def test_reduced_on_construction(self):
        f = RationalFunction(Polynomial((1, 0, -1)), ONE_MINUS_S)
        assert f.den == Polynomial.one()
        assert f.num == Polynomial((1, 1))

    def test_geometric_times_one_minus_s(self):
        assert RationalFunction(Polynomial.one(), ONE_MINUS_S) * ONE_MINUS_S == ONE

    def test_denominator_monic(self):
        f = S / (1 - S) + 1 / (1 - S)
        assert f == RationalFunction(Polynomial((1, 1)), ONE_MINUS_S)
        assert f.den == Polynomial((-1, 1))
        assert f.num == Polynomial((-1, -1))

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(Polynomial.one(), Polynomial.zero())
        with pytest.raises(ZeroDivisionError):
            ONE / RationalFunction(Polynomial.zero())

    def test_cross_equals_agrees_with_structural_equality(self):
        rng = random.Random(5)
        for _ in range(20):
            f, g = _random_ratfunc(rng), _random_ratfunc(rng)
            assert f.cross_equals(g) == (f == g)
            assert (f * g).cross_equals(g * f)

    def test_arith_dispatch(self):
        f, g = S, 1 - S
        assert ratfunc_arith(f, g, "add") == ONE
        assert ratfunc_arith(f, g, "div") == S / (1 - S)

    def test_powers(self):
        geometric = 1 / (1 - S)
        assert S ** 3 == RationalFunction(Polynomial.monomial(1, 3))
        assert geometric ** 2 == RationalFunction(Polynomial.one(), ONE_MINUS_S ** 2)
        assert geometric ** -2 == RationalFunction(ONE_MINUS_S ** 2)
        assert S ** 0 == ONE

    def test_field_laws_on_random_inputs(self):
        rng = random.Random(3)
        for _ in range(15):
            f, g, h = _random_ratfunc(rng), _random_ratfunc(rng), _random_ratfunc(rng)
            assert f * (g + h) == f * g + f * h
            assert (f + g) - g == f
            if not g.is_zero:
                assert (f / g) * g == f


class TestLimitAtOne:
    def test_removable_singularity(self):
        f = RationalFunction(Polynomial((1, 0, -1)), ONE_MINUS_S)
        assert limit_at_one(f) == 2

    def test_infinite(self):
        assert limit_at_one(RationalFunction(Polynomial.one(), ONE_MINUS_S)) == InfiniteLimit(order=1)
        assert limit_at_one(RationalFunction(Polynomial((0, 1)), ONE_MINUS_S ** 2)) == InfiniteLimit(order=2)

    def test_zero_function(self):
        assert limit_at_one(RationalFunction(Polynomial.zero())) == 0

    def test_matches_evaluation_when_defined(self):
        rng = random.Random(17)
        for _ in range(20):
            f = _random_ratfunc(rng)
            if f.den.evaluate(1) != 0:
                assert limit_at_one(f) == f.evaluate(1)


class TestDerivativeAndSeries:
    def test_derivative_of_square(self):
        assert derivative(S * S) == 2 * S

    def test_derivative_of_geometric(self):
        # d/ds 1/(1-s) = 1/(1-s)^2
        f = 1 / (1 - S)
        assert derivative(f) == f * f

    def test_geometric_series(self):
        assert series_coefficients(1 / (1 - S), 4) == [Fraction(1)] * 5

    def test_polynomial_series_pads_with_zeros(self):
        assert series_coefficients(RationalFunction(Polynomial((1, 2))), 3) == [1, 2, 0, 0]

    def test_zero_constant_term_rejected(self):
        with pytest.raises(ZeroDivisionError):
            series_coefficients(1 / S, 3)

    def test_product_is_convolution(self):
        rng = random.Random(2024)
        n_max = 8
        for _ in range(15):
            f, g = _random_ratfunc(rng), _random_ratfunc(rng)
            a = series_coefficients(f, n_max)
            b = series_coefficients(g, n_max)
            convolution = [sum((a[i] * b[n - i] for i in range(n + 1)), Fraction(0)) for n in range(n_max + 1)]
            assert series_coefficients(f * g, n_max) == convolution
