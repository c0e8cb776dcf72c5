#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# mpkernel.py
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
Numeric Kernel for FuchsMatch

Arbitrary precision real and complex arithmetic is mpmath's; this module
adds the branch convention for logarithms, the Gauss hypergeometric series
with a tail estimate, the Clausen function and a library of named constants
that can check themselves against an independent identity.
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Optional

import mpmath as mp

from exactalg import fraction_to_mpf, to_fraction
from exceptions import DivergenceError, KernelError, ZeroArgumentError

logger = logging.getLogger(__name__)


def tolerance(digits: int) -> Any:
    """10^(-digits) as mpf."""
    return mp.mpf(10) ** (-digits)


def log_branch(x: Any) -> Any:
    """
    Logarithm with ln(x) = ln|x| + i*pi on the negative real axis

    mpmath's principal branch already follows that convention, so this is
    the principal logarithm with an explicit zero check.
    """
    x = mp.mpmathify(x)
    if x == 0:
        raise ZeroArgumentError("Logarithm of zero")
    return mp.log(x)


def power_branch(x: Any, rho: Fraction) -> Any:
    """x^rho on the branch matching log_branch."""
    rho = to_fraction(rho)
    x = mp.mpmathify(x)
    if rho.denominator == 1:
        return x ** rho.numerator
    if x == 0:
        if rho > 0:
            return mp.mpf(0)
        raise ZeroArgumentError("Negative fractional power of zero")
    return mp.exp(fraction_to_mpf(rho) * log_branch(x))


def hyp2f1_coeffs(a: Any, b: Any, c: Any, terms: int) -> list:
    """
    Exact Taylor coefficients of 2F1(a, b; c; x)

    Args:
        a, b, c: Rational parameters, c not a nonpositive integer
        terms: Number of coefficients

    Returns:
        List of Fractions
    """
    a, b, c = to_fraction(a), to_fraction(b), to_fraction(c)
    if c <= 0 and c.denominator == 1:
        raise KernelError("c must not be a nonpositive integer", {"c": str(c)})
    out = []
    t = Fraction(1)
    for n in range(terms):
        out.append(t)
        t = t * (a + n) * (b + n) / ((c + n) * (n + 1))
    return out


def hyp2f1_series(a: Any, b: Any, c: Any, x: Any, terms: int) -> tuple:
    """
    Partial sum of the Gauss series with a tail estimate

    Args:
        a, b, c: Rational parameters
        x: Argument with |x| < 1
        terms: Number of terms summed

    Returns:
        (value, tail_estimate, coefficients)
    """
    x = mp.mpmathify(x)
    if abs(x) >= 1:
        raise DivergenceError("Gauss series diverges for |x| >= 1", abs_x=mp.nstr(abs(x), 10))
    coeffs = hyp2f1_coeffs(a, b, c, terms)
    total = mp.mpf(0)
    xn = mp.mpf(1)
    last = mp.mpf(0)
    for q in coeffs:
        last = fraction_to_mpf(q) * xn
        total += last
        xn *= x
    # geometric tail from the last term; the term ratio tends to |x|
    tail = abs(last) * abs(x) / (1 - abs(x))
    return total, tail, coeffs


def clausen2(theta: Any) -> Any:
    """Cl2(theta) = sum sin(n theta)/n^2."""
    return mp.clsin(2, theta)


def i3_plus() -> Any:
    """The constant (1/(2 pi^2)) (pi^2/3 + 2 - 3 sqrt(3) Cl2(pi/3))."""
    return (mp.pi ** 2 / 3 + 2 - 3 * mp.sqrt(3) * clausen2(mp.pi / 3)) / (2 * mp.pi ** 2)


def i4_minus() -> Any:
    """The constant (1/(16 pi^3)) (4 pi^2/9 - 1/6 - 7 zeta(3)/2)."""
    return (4 * mp.pi ** 2 / 9 - mp.mpf(1) / 6 - mp.mpf(7) / 2 * mp.zeta(3)) / (16 * mp.pi ** 3)


def agm_elliptic_k(x: Any) -> Any:
    """2F1(1/2,1/2;1;x) = 1/agm(1, sqrt(1-x))."""
    return 1 / mp.agm(1, mp.sqrt(1 - mp.mpmathify(x)))


class ConstantLibrary:
    """
    Named constants evaluated at the current mpmath precision

    Every constant has a primary evaluator and an independent second
    evaluator used by ``self_check``.
    """

    _PRIMARY: Dict[str, Callable[[], Any]] = {
        "pi": lambda: +mp.pi,
        "ln2": lambda: +mp.ln2,
        "ln3": lambda: mp.log(3),
        "sqrt3": lambda: mp.sqrt(3),
        "sqrt7": lambda: mp.sqrt(7),
        "gamma": lambda: +mp.euler,
        "catalan": lambda: +mp.catalan,
        "zeta3": lambda: mp.zeta(3),
        "cl2(pi/3)": lambda: clausen2(mp.pi / 3),
        "I3p": i3_plus,
        "I4m": i4_minus,
    }

    _CHECK: Dict[str, Callable[[], Any]] = {
        "pi": lambda: 16 * mp.atan(mp.mpf(1) / 5) - 4 * mp.atan(mp.mpf(1) / 239),
        "ln2": lambda: 2 * mp.atanh(mp.mpf(1) / 3),
        "ln3": lambda: 2 * mp.atanh(mp.mpf(1) / 3) + 2 * mp.atanh(mp.mpf(1) / 5),
        "sqrt3": lambda: 2 * mp.sin(mp.pi / 3),
        "sqrt7": lambda: mp.exp(mp.log(7) / 2),
        "gamma": lambda: -mp.psi(0, 1),
        "catalan": lambda: clausen2(mp.pi / 2),
        "zeta3": lambda: +mp.apery,
        "cl2(pi/3)": lambda: mp.im(mp.polylog(2, mp.expjpi(mp.mpf(1) / 3))),
        "I3p": lambda: (mp.pi ** 2 / 3 + 2 - 3 * mp.sqrt(3) * mp.im(mp.polylog(2, mp.expjpi(mp.mpf(1) / 3))))
                       / (2 * mp.pi ** 2),
        "I4m": lambda: (4 * mp.pi ** 2 / 9 - mp.mpf(1) / 6 - mp.mpf(7) / 2 * mp.apery) / (16 * mp.pi ** 3),
    }

    def __init__(self) -> None:
        self._extras: Dict[str, Callable[[], Any]] = {}

    def names(self) -> list:
        return list(self._PRIMARY) + list(self._extras)

    def add(self, name: str, evaluator: Callable[[], Any]) -> None:
        """Register a user constant (no self check available)."""
        self._extras[name] = evaluator

    def value(self, name: str) -> Any:
        if name in self._extras:
            return self._extras[name]()
        if name not in self._PRIMARY:
            raise KernelError(f"Unknown constant: {name}")
        return self._PRIMARY[name]()

    def self_check(self, name: str, digits: Optional[int] = None) -> bool:
        """
        Compare the primary and independent evaluations

        Args:
            name: Constant name
            digits: Required agreement, defaults to working precision - 10

        Returns:
            True if both evaluations agree to ``digits``
        """
        if name not in self._CHECK:
            return True
        digits = digits if digits is not None else mp.mp.dps - 10
        a = self.value(name)
        b = self._CHECK[name]()
        ok = abs(a - b) <= tolerance(digits) * max(1, abs(a))
        if not ok:
            logger.warning(f"Constant {name} failed its self check at {digits} digits")
        return bool(ok)
