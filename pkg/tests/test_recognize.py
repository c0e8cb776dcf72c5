#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Unit tests for recognize.py
"""

from fractions import Fraction

import mpmath as mp
import pytest

from exceptions import InsufficientPrecisionError, RecognitionError
from mpkernel import ConstantLibrary, i3_plus, tolerance
from recognize import (
    ClosedForm,
    RecognitionBasis,
    composite_evaluator,
    constant_from_file,
    format_relation,
    recognize_matrix,
    recognize_value,
)


@pytest.fixture
def precision():
    with mp.workdps(60):
        yield 60


@pytest.fixture
def sqrt3_basis():
    return RecognitionBasis.from_names(["1", "sqrt3/pi"])


class TestCompositeNames:
    """Test product names over the constant library"""

    def test_quotient(self, precision):
        """Test sqrt3/pi"""
        f = composite_evaluator(ConstantLibrary(), "sqrt3/pi")
        assert abs(f() - mp.sqrt(3) / mp.pi) < tolerance(55)

    def test_power(self, precision):
        """Test ln2^2 and pi^2"""
        library = ConstantLibrary()
        assert abs(composite_evaluator(library, "ln2^2")() - mp.ln2 ** 2) < tolerance(55)
        assert abs(composite_evaluator(library, "pi*sqrt3")() - mp.pi * mp.sqrt(3)) < tolerance(55)

    def test_library_name(self, precision):
        """Test that names with parentheses resolve directly"""
        f = composite_evaluator(ConstantLibrary(), "cl2(pi/3)")
        assert abs(f() - mp.clsin(2, mp.pi / 3)) < tolerance(55)

    def test_unit(self):
        """Test the integer constant 1"""
        assert composite_evaluator(ConstantLibrary(), "1")() == 1

    def test_unknown(self):
        """Test an unknown factor"""
        with pytest.raises(RecognitionError):
            composite_evaluator(ConstantLibrary(), "sqrt5/pi")

    def test_default_basis(self):
        """Test that every default name resolves"""
        basis = RecognitionBasis.default()
        assert len(basis.values()) == len(basis.names)


class TestRecognizeValue:
    """Test PSLQ recognition"""

    def test_real(self, precision, sqrt3_basis):
        """Test -9 sqrt(3)/(64 pi)"""
        form = recognize_value(-9 * mp.sqrt(3) / (64 * mp.pi), sqrt3_basis)
        assert form is not None
        assert form.real == {"sqrt3/pi": Fraction(-9, 64)}
        assert format_relation(form) == "-9/64*sqrt3/pi"
        assert form.verified_digits >= 40

    def test_mixed(self, precision):
        """Test a rational plus a constant"""
        basis = RecognitionBasis.from_names(["1", "I3p"])
        form = recognize_value(mp.mpf(1) / 3 - 2 * i3_plus(), basis)
        assert form.real == {"1": Fraction(1, 3), "I3p": Fraction(-2)}
        assert str(form) == "1/3 - 2*I3p"

    def test_complex(self, precision):
        """Test separate real and imaginary parts"""
        basis = RecognitionBasis.from_names(["1", "pi"])
        form = recognize_value(mp.mpc(mp.mpf(1) / 3, 2 * mp.pi), basis)
        assert form.real == {"1": Fraction(1, 3)}
        assert form.imag == {"pi": Fraction(2)}
        assert format_relation(form) == "1/3 + (2*pi)*I"

    def test_zero(self, precision, sqrt3_basis):
        """Test that zero is the empty relation"""
        form = recognize_value(mp.mpf(0), sqrt3_basis)
        assert form.real == {} and form.imag == {}
        assert format_relation(form) == "0"

    def test_unrecognized(self, precision):
        """Test a value outside the span of the basis"""
        basis = RecognitionBasis.from_names(["1", "pi"])
        assert recognize_value(mp.e, basis) is None
        assert format_relation(None) == "unrecognized"

    def test_insufficient_digits(self, precision, sqrt3_basis):
        """Test that too few trusted digits are refused"""
        with pytest.raises(InsufficientPrecisionError):
            recognize_value(mp.pi, sqrt3_basis, digits=10)

    def test_evaluate_closed_form(self, precision, sqrt3_basis):
        """Test evaluating a closed form against its basis"""
        form = ClosedForm({"1": Fraction(1, 2), "sqrt3/pi": Fraction(3)})
        assert abs(form.evaluate(sqrt3_basis) - (mp.mpf(1) / 2 + 3 * mp.sqrt(3) / mp.pi)) < tolerance(55)


class TestBasisTiers:
    """Test nested prefixes and added constants"""

    def test_default_sizes(self):
        basis = RecognitionBasis.default()
        assert basis.sizes() == [8, 14, 18]
        assert basis.required_digits(8) == 108
        assert basis.required_digits() == 228

    def test_small_tier_first(self):
        """Test -9 sqrt(3)/(64 pi) with fewer digits than the whole basis needs"""
        basis = RecognitionBasis.default()
        with mp.workdps(140):
            form = recognize_value(-9 * mp.sqrt(3) / (64 * mp.pi), basis, digits=120)
        assert form.real == {"sqrt3/pi": Fraction(-9, 64)}

    def test_too_few_digits_for_any_tier(self, precision):
        with pytest.raises(InsufficientPrecisionError) as info:
            recognize_value(mp.pi, RecognitionBasis.default(), digits=60)
        assert info.value.required == 108

    def test_added_constant_leads(self, precision):
        """Test that an added constant joins every prefix"""
        basis = RecognitionBasis.default()
        basis.add("I3p", i3_plus)
        assert basis.names[0] == "I3p"
        assert basis.sizes() == [9, 15, 19]
        assert basis.prefix(9).names[1:] == list(basis.names[1:9])
        with pytest.raises(RecognitionError):
            basis.add("pi", lambda: mp.pi)

    def test_added_constant_recognized(self, precision):
        basis = RecognitionBasis.from_names(["1"])
        basis.add("I3p", i3_plus)
        form = recognize_value(mp.mpf(1) / 3 - 2 * i3_plus(), basis)
        assert form.real == {"I3p": Fraction(-2), "1": Fraction(1, 3)}

    def test_constant_from_file(self, precision, tmp_path):
        source = tmp_path / "c.txt"
        source.write_text("# Catalan\n0.91596559417721901505460351493238411077414937428167  trailing\n")
        f = constant_from_file(str(source))
        assert abs(f() - mp.catalan) < tolerance(45)

    def test_constant_file_without_number(self, tmp_path):
        source = tmp_path / "c.txt"
        source.write_text("#\nabc\n")
        with pytest.raises(RecognitionError):
            constant_from_file(str(source))


class TestRecognizeMatrix:
    """Test entrywise recognition"""

    def test_counts(self, precision, sqrt3_basis):
        """Test recognized and unrecognized entries"""
        m = mp.matrix([[1, 0], [-9 * mp.sqrt(3) / (64 * mp.pi), mp.e]])
        result = recognize_matrix(m, sqrt3_basis)
        assert result.recognized == 3
        assert [(i, j) for i, j, _ in result.unrecognized] == [(2, 2)]
        assert result.forms[1][1] is None
        assert format_relation(result.forms[0][0]) == "1"
