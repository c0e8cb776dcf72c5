#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# asymptotics.py
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
Coefficient Asymptotics for FuchsMatch

Turns the singular terms of a designated solution at its dominant
singularities into predictions for the Taylor coefficients at w = 0 and
compares them with the actual series.

A local term x^e log(x)^k at w = r, with x = 1 - w/r, contributes
r^(-N) [u^N] (1-u)^e log(1-u)^k to the coefficient of w^N. The log
coefficients come from harmonic numbers, so nothing here relies on an
expansion in 1/n; the expansions quoted for the susceptibility series are
kept as separate formula evaluators.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import mpmath as mp

from exceptions import AsymptoticsError
from mpkernel import i3_plus, i4_minus

logger = logging.getLogger(__name__)

MAX_LOG_POWER = 3


def harmonic(n: int, order: int = 1) -> Fraction:
    """sum_{i=1}^{n} 1/i^order"""
    return sum((Fraction(1, i ** order) for i in range(1, n + 1)), Fraction(0))


def log_transfer_coeffs(p: int, n: int) -> Fraction:
    """
    Exact coefficient of x^n in log(1-x)^p for p <= 3

    With Psi(n) + gamma = H(n-1) and Psi(1, n) = pi^2/6 - H2(n-1) the
    transcendental parts cancel and the coefficient is rational:
    p = 1: -1/n, p = 2: (2/n) H(n-1), p = 3: -(3/n) (H(n-1)^2 - H2(n-1)).

    Raises:
        AsymptoticsError: p outside 0..3
    """
    if p < 0 or p > MAX_LOG_POWER:
        raise AsymptoticsError(f"Log power {p} not supported", {"max": MAX_LOG_POWER})
    if p == 0:
        return Fraction(1 if n == 0 else 0)
    if n < 1:
        return Fraction(0)
    if p == 1:
        return Fraction(-1, n)
    h1 = harmonic(n - 1)
    if p == 2:
        return 2 * h1 / n
    return -3 * (h1 * h1 - harmonic(n - 1, 2)) / n


def log_transfer_mp(p: int, n: int) -> Any:
    """Same coefficient through Psi and gamma, as written with polygamma."""
    if p < 0 or p > MAX_LOG_POWER:
        raise AsymptoticsError(f"Log power {p} not supported", {"max": MAX_LOG_POWER})
    if p == 0:
        return mp.mpf(1 if n == 0 else 0)
    if n < 1:
        return mp.mpf(0)
    if p == 1:
        return -mp.mpf(1) / n
    s = mp.psi(0, n) + mp.euler
    if p == 2:
        return 2 * s / n
    return -3 * s ** 2 / n + mp.pi ** 2 / (2 * n) - 3 * mp.psi(1, n) / n


def log_transfer_expansion(p: int, n: Any) -> Any:
    """
    Large-n expansion of the log coefficients, through 1/n^3

    Uses Psi(n) ~ ln n - 1/(2n) - 1/(12n^2) and
    Psi(1, n) ~ 1/n + 1/(2n^2) + 1/(6n^3).
    """
    if p < 0 or p > MAX_LOG_POWER:
        raise AsymptoticsError(f"Log power {p} not supported", {"max": MAX_LOG_POWER})
    n = mp.mpf(n)
    if p == 0:
        return mp.mpf(0)
    if p == 1:
        return -1 / n
    s = mp.log(n) + mp.euler - 1 / (2 * n) - 1 / (12 * n ** 2)
    if p == 2:
        return 2 * s / n
    trig = 1 / n + 1 / (2 * n ** 2) + 1 / (6 * n ** 3)
    return -3 * s ** 2 / n + mp.pi ** 2 / (2 * n) - 3 * trig / n


def _log_sequence(p: int, count: int) -> list:
    """log(1-x)^p coefficients 0..count-1 as mpf, from running harmonic sums."""
    out = []
    h1 = mp.mpf(0)
    h2 = mp.mpf(0)
    for n in range(count):
        if p == 0:
            out.append(mp.mpf(1 if n == 0 else 0))
        elif n == 0:
            out.append(mp.mpf(0))
        elif p == 1:
            out.append(-mp.mpf(1) / n)
        elif p == 2:
            out.append(2 * h1 / n)
        else:
            out.append(-3 * (h1 * h1 - h2) / n)
        if n >= 1:
            h1 += mp.mpf(1) / n
            h2 += mp.mpf(1) / n ** 2
    return out


def _binomial_sequence(e: Fraction, count: int) -> list:
    """(1-u)^e coefficients 0..count-1."""
    out = [mp.mpf(1)]
    ef = mp.mpf(e.numerator) / e.denominator
    for j in range(1, count):
        out.append(out[-1] * (j - 1 - ef) / j)
    return out


@dataclass
class AsymptoticTerm:
    """amplitude * x^exponent log(x)^log_power at w = point, x = 1 - w/point."""

    point: Any
    exponent: Fraction
    log_power: int
    amplitude: Any


@dataclass
class AsymptoticModel:
    """
    Predicted Taylor coefficients of a designated solution

    ``shift`` and ``divisor`` normalize the target: c(n) is the
    coefficient of w^(n + shift) divided by ``divisor``.
    """

    terms: List[AsymptoticTerm] = field(default_factory=list)
    shift: int = 0
    divisor: Any = 1
    label: str = ""

    @property
    def radius(self) -> Any:
        if not self.terms:
            raise AsymptoticsError("Empty asymptotic model")
        return min(abs(mp.mpmathify(t.point)) for t in self.terms)

    def parity_split(self) -> Dict[Any, list]:
        """Terms grouped by singular point; paired points +-r give the parity effect."""
        groups: Dict[Any, list] = {}
        for t in self.terms:
            groups.setdefault(t.point, []).append(t)
        return groups


def term_coefficient(term: AsymptoticTerm, N: int) -> Any:
    """Contribution of one local term to the coefficient of w^N."""
    e = Fraction(term.exponent)
    k = term.log_power
    if k > MAX_LOG_POWER:
        raise AsymptoticsError(f"Log power {k} not supported", {"max": MAX_LOG_POWER})
    if k == 0 and e.denominator == 1 and e >= 0:
        return mp.mpf(0) if N > e else None
    r = mp.mpmathify(term.point)
    if k == 0:
        inner = _binomial_sequence(e, N + 1)[N]
    elif e.denominator == 1 and e >= 0:
        # (1-u)^e is a polynomial of degree e
        binom = _binomial_sequence(e, int(e) + 1)
        logs = _log_sequence(k, N + 1)
        inner = mp.fsum(binom[j] * logs[N - j] for j in range(min(int(e), N) + 1))
    else:
        binom = _binomial_sequence(e, N + 1)
        logs = _log_sequence(k, N + 1)
        inner = mp.fsum(binom[j] * logs[N - j] for j in range(N + 1))
    return term.amplitude * inner / r ** N


def predict_coeffs(model: AsymptoticModel, n: int) -> Any:
    """Predicted c(n); analytic polynomial terms below their degree are skipped."""
    N = n + model.shift
    total = mp.mpf(0)
    for t in model.terms:
        v = term_coefficient(t, N)
        if v is not None:
            total += v
    value = total / model.divisor
    if abs(mp.im(value)) <= mp.mpf(10) ** (-(mp.mp.dps // 2)) * max(1, abs(value)):
        value = mp.re(value)
    return value


def model_from_singular(parts: Dict[Any, Sequence[Any]], shift: int = 0, divisor: Any = 1,
                        label: str = "") -> AsymptoticModel:
    """
    Asymptotic model from physical.singular_part output

    Args:
        parts: {singular point w value: [SingularTerm, ...]}
    """
    terms = []
    for point, singular in parts.items():
        for s in singular:
            series = s.series or [s.coefficient]
            for j, c in enumerate(series):
                if c == 0:
                    continue
                terms.append(AsymptoticTerm(point, Fraction(s.exponent) + j, s.log_power, c))
                if s.log_power == 0:
                    break
    logger.info(f"Asymptotic model {label}: {len(terms)} terms from {len(parts)} points")
    return AsymptoticModel(terms, shift, divisor, label)


@dataclass
class ComparisonRow:
    n: int
    actual: Any
    predicted: Any
    relative_error: Any
    normalized: Any


def compare(series: Sequence[Any], model: AsymptoticModel, n_list: Sequence[int]) -> List[ComparisonRow]:
    """
    Predicted versus actual coefficients

    ``series`` holds the designated solution's coefficients of w^0, w^1,
    ...; ``normalized`` is c(n) * radius^n.

    Raises:
        AsymptoticsError: series too short for a requested n
    """
    rows = []
    rad = model.radius
    for n in n_list:
        N = n + model.shift
        if N >= len(series):
            raise AsymptoticsError(f"Series has no coefficient for n = {n}", {"terms": len(series)})
        actual = mp.mpmathify(series[N]) / model.divisor
        predicted = predict_coeffs(model, n)
        err = abs(predicted - actual) / abs(actual) if actual != 0 else abs(predicted)
        rows.append(ComparisonRow(n, actual, predicted, err, actual * rad ** n))
        logger.debug(f"n={n}: actual {mp.nstr(actual, 10)}, predicted {mp.nstr(predicted, 10)}")
    return rows


def leading_limit(model: AsymptoticModel) -> Any:
    """
    Limit of c(n) radius^n from the simple poles on the positive axis

    Only a pole at w = radius survives the normalization without
    oscillating; nothing else contributes to the limit.
    """
    rad = model.radius
    total = mp.mpf(0)
    for t in model.terms:
        r = mp.mpmathify(t.point)
        if t.exponent == -1 and t.log_power == 0 and abs(r - rad) <= mp.mpf(10) ** (-(mp.mp.dps // 2)):
            total += t.amplitude * rad ** (-model.shift)
    value = total / model.divisor
    return mp.re(value) if abs(mp.im(value)) <= mp.mpf(10) ** (-(mp.mp.dps // 2)) else value


def richardson_limit(values: Sequence[Any]) -> Any:
    """Limit of a slowly converging sequence, via mpmath's Richardson extrapolation."""
    if len(values) < 3:
        raise AsymptoticsError("Richardson extrapolation needs at least three values")
    limit, _ = mp.richardson([mp.mpmathify(v) for v in values])
    return limit


# Expansions quoted for the susceptibility series

def chi3_expansion(n: Any) -> Any:
    """
    Large-n form of c(n)/4^n for the coefficients of chi3/(8 w^9)

    2^-15 c(n)/4^n ~ I3/2 - (1/2 + (-1)^n)(ln n/n + b1/n - 1/(2n^2))/(16 pi^2)
    + (23/12 + 6(-1)^n)/(16 pi^2 n), with b1 = gamma + 3 ln 2.
    """
    n = int(n)
    sign = 1 if n % 2 == 0 else -1
    nn = mp.mpf(n)
    b1 = mp.euler + 3 * mp.log(2)
    k = 1 / (16 * mp.pi ** 2)
    value = i3_plus() / 2 - k * (mp.mpf(1) / 2 + sign) * (mp.log(nn) / nn + b1 / nn - 1 / (2 * nn ** 2)) \
        + k * (mp.mpf(23) / 12 + 6 * sign) / nn
    return 2 ** 15 * value


def chi3_limit() -> Any:
    """n -> infinity limit of c(n)/4^n, 2^14 I3."""
    return 2 ** 14 * i3_plus()


def chi4_constants() -> tuple:
    """(b1, b2) of the fourth order coefficient expansion."""
    g = mp.euler
    l2 = mp.log(2)
    b1 = g + 4 * l2 - mp.mpf(35) / 6
    b2 = 288 * l2 ** 2 + 144 * g * l2 + 18 * g ** 2 - 210 * g - 840 * l2 + 45 * mp.pi ** 2 + 214
    return b1, b2


def chi4_expansion(n: Any, i4: Optional[Any] = None) -> Any:
    """
    Large-n form of the fourth order coefficients

    ``i4`` defaults to the closed form of the amplitude at w = 1.
    """
    i4 = i4_minus() if i4 is None else mp.mpmathify(i4)
    b1, b2 = chi4_constants()
    n = mp.mpf(n)
    p3 = mp.pi ** 3
    ln = mp.log(n)
    return (i4 - ln ** 2 / (128 * p3 * n) + ln / (128 * p3 * n ** 2) - b1 * ln / (64 * p3 * n)
            - b2 / (2304 * p3 * n) + (b1 - 1) / (128 * p3 * n ** 2))
