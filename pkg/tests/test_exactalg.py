#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Unit tests for exactalg.py
"""

from fractions import Fraction

import mpmath as mp
import pytest
import sympy

from exactalg import (
    ONE,
    W,
    NumberField,
    RatPoly,
    exact_rank,
    fraction_str,
    parse_poly,
    poly_roots_exact,
    rational_point,
    to_fraction,
)
from exceptions import OperatorError, PolySyntaxError, UnknownSymbolError


class TestToFraction:
    """Test conversion of scalars to Fraction"""

    def test_int_and_string(self):
        """Test ints and 'p/q' strings"""
        assert to_fraction(3) == Fraction(3)
        assert to_fraction(" -3/8 ") == Fraction(-3, 8)

    def test_sympy_rational(self):
        """Test sympy rationals"""
        assert to_fraction(sympy.Rational(5, 7)) == Fraction(5, 7)

    def test_float_rejected(self):
        """Test that floats are not silently converted"""
        with pytest.raises(TypeError):
            to_fraction(0.25)

    def test_fraction_str(self):
        """Test p/q printing"""
        assert fraction_str(Fraction(4, 2)) == "2"
        assert fraction_str(Fraction(-1, 12)) == "-1/12"


class TestRatPoly:
    """Test exact polynomial arithmetic"""

    def test_trailing_zeros_stripped(self):
        """Test normalisation of the coefficient list"""
        p = RatPoly([1, 2, 0, 0])
        assert p.degree == 1
        assert RatPoly().degree == -1
        assert RatPoly([0, 0]).is_zero()

    def test_ring_operations(self):
        """Test addition, multiplication and powers"""
        p = 1 - 4 * W
        assert (p * p) == RatPoly([1, -8, 16])
        assert p ** 2 == p * p
        assert (W + 1) - W == ONE
        assert (2 - W) == RatPoly([2, -1])

    def test_divmod(self):
        """Test Euclidean division"""
        p = (1 - 4 * W) * (1 + 2 * W) + 3
        q, r = divmod(p, 1 - 4 * W)
        assert q == 1 + 2 * W
        assert r == RatPoly([3])

    def test_exact_div_raises(self):
        """Test that inexact division is an error"""
        with pytest.raises(OperatorError):
            (W ** 2 + 1).exact_div(W - 1)

    def test_evaluation(self):
        """Test Horner evaluation with exact and mp arguments"""
        p = RatPoly([1, 3, 4])
        assert p(Fraction(1, 2)) == Fraction(7, 2)
        assert mp.almosteq(p(mp.mpf("0.5")), mp.mpf("3.5"))

    def test_taylor_shift_and_scale(self):
        """Test p(x + a) and p(k x)"""
        p = W ** 2
        assert p.taylor_shift(1) == RatPoly([1, 2, 1])
        assert (1 - 4 * W).scale_var(Fraction(1, 4)) == 1 - W

    def test_compose_and_reverse(self):
        """Test composition and reversal"""
        p = 1 + 3 * W + 4 * W ** 2
        assert p.compose(1 + W) == p.taylor_shift(1)
        assert p.reverse() == RatPoly([4, 3, 1])
        assert p.reverse(3) == RatPoly([0, 4, 3, 1])

    def test_content_and_gcd(self):
        """Test content and monic gcd"""
        p = RatPoly([Fraction(1, 2), Fraction(3, 4)])
        assert p.content() == Fraction(1, 4)
        g = ((1 - 4 * W) * (1 + W)).gcd((1 - 4 * W) * (1 - W))
        assert g == W - Fraction(1, 4)

    def test_valuation_and_shift_down(self):
        """Test order of vanishing at zero"""
        p = W ** 3 * (1 + W)
        assert p.valuation() == 3
        assert p.shift_down(3) == 1 + W
        with pytest.raises(OperatorError):
            p.shift_down(4)

    def test_to_string_round_trip(self):
        """Test that printed text parses back"""
        p = RatPoly([Fraction(-1, 3), 0, 5, -1])
        assert parse_poly(p.to_string()) == p


class TestParsePoly:
    """Test the exact expression parser"""

    def test_factored_form(self):
        """Test products, powers and parentheses"""
        p = parse_poly("(4*w-1)^2*(1+2*w)")
        assert p == (4 * W - 1) ** 2 * (1 + 2 * W)

    def test_double_star_power(self):
        """Test ** as power"""
        assert parse_poly("w**3 - 1") == W ** 3 - 1

    def test_rational_constants(self):
        """Test division by integer constants"""
        assert parse_poly("3/8*w + 1/2") == RatPoly([Fraction(1, 2), Fraction(3, 8)])

    def test_other_variable(self):
        """Test a declared variable other than w"""
        assert parse_poly("x^2", variable="x") == W ** 2

    def test_unknown_symbol(self):
        """Test that foreign identifiers are rejected with their offset"""
        with pytest.raises(UnknownSymbolError) as exc:
            parse_poly("1 + z")
        assert exc.value.offset == 4
        assert exc.value.symbol == "z"

    @pytest.mark.parametrize("text", ["1.5*w", "w^-1", "(1+w", "w/(1+w)", "", "1 +"])
    def test_syntax_errors(self, text):
        """Test malformed expressions"""
        with pytest.raises(PolySyntaxError):
            parse_poly(text)

    def test_unbalanced_offset(self):
        """Test the reported byte offset for a stray character"""
        with pytest.raises(PolySyntaxError) as exc:
            parse_poly("w + 1)")
        assert exc.value.offset == 5


class TestAlgebraicPoints:
    """Test exact roots and algebraic points"""

    def test_rational_point(self):
        """Test rational points"""
        p = rational_point("-1/4")
        assert p.rational == Fraction(-1, 4)
        assert p.is_real
        assert p.describe() == "-1/4"
        assert p.residual() == 0

    def test_roots_of_quadratic(self):
        """Test the complex pair of 1 + 3w + 4w^2"""
        with mp.workdps(40):
            factors = poly_roots_exact(1 + 3 * W + 4 * W ** 2)
            assert len(factors) == 1
            factor, mult, points = factors[0]
            assert mult == 1
            assert factor == W ** 2 + Fraction(3, 4) * W + Fraction(1, 4)
            values = sorted((pt.value() for pt in points), key=lambda z: mp.im(z))
            assert mp.almosteq(values[1], mp.mpc(-0.375, mp.sqrt(7) / 8), 1e-35)
            upper = [pt for pt in points if pt.selector == "im>0"][0]
            assert upper.conjugate().selector == "im<0"
            assert upper.residual() < mp.mpf(10) ** -35

    def test_multiplicity(self):
        """Test squarefree factorisation with multiplicities"""
        factors = poly_roots_exact((1 - 4 * W) ** 2 * W)
        mults = sorted((f.degree, m) for f, m, _ in factors)
        assert mults == [(1, 1), (1, 2)]

    def test_value_at_higher_precision(self):
        """Test that values are re-derived from exact data"""
        factors = poly_roots_exact(W ** 2 - 2, dps=20)
        point = [p for p in factors[0][2] if mp.re(p.value()) > 0][0]
        with mp.workdps(60):
            assert mp.almosteq(point.value(60), mp.sqrt(2), mp.mpf(10) ** -55)


class TestNumberField:
    """Test exact arithmetic at an algebraic point"""

    @pytest.fixture
    def root2(self):
        factors = poly_roots_exact(W ** 2 - 2)
        point = [p for p in factors[0][2] if mp.re(p.value()) > 0][0]
        return NumberField(point)

    def test_reduction(self, root2):
        """Test alpha^2 = 2 and alpha^-2 = 1/2"""
        a = root2.element(W)
        assert a * a == 2
        assert root2.power(3) == 2 * W
        assert root2.power(-2) == RatPoly.constant(Fraction(1, 2))
        assert root2.degree == 2

    def test_inverse(self, root2):
        a = root2.element(W)
        assert 1 / a == a / 2
        assert (1 + a) * (a - 1) == 1
        with pytest.raises(ZeroDivisionError):
            root2.element(0).inverse()

    def test_vanishing_is_exact(self, root2):
        """Test that a cancellation far below any tolerance is seen as zero"""
        a = root2.element(W)
        big = Fraction(10) ** 40
        x = (a + big) * (a - big) - 2 + big * big
        assert not x
        assert x == 0
        y = x + Fraction(1, 10 ** 60)
        assert y
        assert y.coordinate(0) == Fraction(1, 10 ** 60)

    def test_embedding(self, root2):
        with mp.workdps(50):
            a = root2.element(3 + W)
            assert mp.almosteq(a.numeric(), 3 + mp.sqrt(2), mp.mpf(10) ** -48)

    def test_rank_over_field(self, root2):
        """Test [[alpha, 2], [1, alpha]] is singular"""
        a = root2.element(W)
        assert exact_rank([[a, 2], [1, a]]) == 1
        assert exact_rank([[a, 1], [1, a]]) == 2
        assert exact_rank([]) == 0
