#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# utils.py
# This file is part of FuchsMatch
#
# You may use this file under the terms of the BSD license as follows:
#
# "Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are
# met:
#   * Redistributions of source code must retain the above copyright
#     notice, this list of conditions and the following disclaimer.
#   * Redistributions in binary form must reproduce the above copyright
#     notice, this list of conditions and the following disclaimer in
#     the documentation and/or other materials provided with the
#     distribution.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
# "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT
# LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR
# A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT
# OWNER OR CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL,
# SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT
# LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE,
# DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY
# THEORY OF LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT
# (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE
# OF THIS SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE."
#
#############################################################################

"""
Utility Functions for FuchsMatch

Small parsing helpers shared by the command line and the fixtures loader,
and the working precision context manager.
"""

from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Optional

import mpmath as mp

from defaults import DEFAULT_GUARD_DIGITS, MIN_PRECISION
from exceptions import ConfigValueError

INFINITY_NAMES = ("inf", "infinity", "oo")


def parse_point_name(value: str) -> str:
    """
    Normalise a point name given on the command line

    Rational points become their reduced 'p/q' text, infinity becomes 'inf',
    anything else (w1, w2, ...) is returned stripped.

    Args:
        value: Point text, e.g. "1/4", "-0.5" is rejected, "inf", "w1"

    Returns:
        Canonical point name
    """
    text = value.strip()
    if text.lower() in INFINITY_NAMES:
        return "inf"
    try:
        q = Fraction(text)
    except ValueError:
        if not text or not (text[0].isalpha()):
            raise ConfigValueError(f"Invalid point: {value}", key="point", value=value)
        return text
    if "." in text or "e" in text.lower():
        raise ConfigValueError("Points must be exact rationals", key="point", value=value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_path(value: str) -> list:
    """Parse a comma separated point path such as "0,1/4,1"."""
    names = [parse_point_name(p) for p in value.split(",") if p.strip()]
    if not names:
        raise ConfigValueError("Empty path", key="path", value=value)
    return names


def parse_int_list(value: str) -> list:
    """Parse "100,200,500" into integers."""
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise ConfigValueError(f"Invalid integer list: {value}", key="n", value=value)


@contextmanager
def working_precision(dps: int, guard: Optional[int] = DEFAULT_GUARD_DIGITS) -> Iterator[int]:
    """
    Context manager for a run at ``dps`` decimal digits

    The mpmath context carries ``guard`` extra digits and is restored on
    exit, even if an exception occurs.

    Args:
        dps: Target precision in decimal digits
        guard: Extra guard digits

    Yields:
        The target precision
    """
    if dps < MIN_PRECISION // 5:
        raise ConfigValueError("Precision too low", key="precision", value=dps)
    with mp.workdps(dps + (guard or 0)):
        yield dps
