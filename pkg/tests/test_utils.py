#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Unit tests for utils.py
"""

import mpmath as mp
import pytest

from exceptions import ConfigValueError
from utils import parse_int_list, parse_path, parse_point_name, working_precision


class TestParsePointName:
    """Test parse_point_name function"""

    def test_rational_is_reduced(self):
        """Test that rationals are reduced to p/q"""
        assert parse_point_name("2/8") == "1/4"
        assert parse_point_name(" -1/4 ") == "-1/4"
        assert parse_point_name("0") == "0"
        assert parse_point_name("4/4") == "1"

    def test_infinity_spellings(self):
        """Test all accepted names for infinity"""
        for text in ("inf", "Infinity", "oo"):
            assert parse_point_name(text) == "inf"

    def test_named_point(self):
        """Test that named algebraic points pass through"""
        assert parse_point_name("w1") == "w1"

    def test_decimal_rejected(self):
        """Test that decimal points are refused"""
        with pytest.raises(ConfigValueError):
            parse_point_name("0.25")

    def test_garbage_rejected(self):
        with pytest.raises(ConfigValueError) as excinfo:
            parse_point_name("#1")
        assert excinfo.value.key == "point"


class TestParseLists:
    """Test path and integer list parsing"""

    def test_path(self):
        assert parse_path("0, 1/4,1") == ["0", "1/4", "1"]

    def test_empty_path(self):
        with pytest.raises(ConfigValueError):
            parse_path(" , ")

    def test_int_list(self):
        assert parse_int_list("100,200,500") == [100, 200, 500]

    def test_bad_int_list(self):
        with pytest.raises(ConfigValueError):
            parse_int_list("100,many")


class TestWorkingPrecision:
    """Test the working precision context manager"""

    def test_guard_digits_and_restore(self):
        """Test that guard digits are added and the old precision restored"""
        before = mp.mp.dps
        with working_precision(60, guard=5) as dps:
            assert dps == 60
            assert mp.mp.dps == 65
        assert mp.mp.dps == before

    def test_restore_after_exception(self):
        """Test that the precision is restored when the body raises"""
        before = mp.mp.dps
        with pytest.raises(RuntimeError):
            with working_precision(80):
                raise RuntimeError("boom")
        assert mp.mp.dps == before

    def test_too_low(self):
        with pytest.raises(ConfigValueError):
            with working_precision(3):
                pass
