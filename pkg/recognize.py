#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# recognize.py
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
Constant Recognition for FuchsMatch

Integer relation (PSLQ) recognition of high precision numbers as rational
combinations of a basis of named constants. Real and imaginary parts are
recognized separately; a candidate is accepted only after re-evaluating
the basis at a higher precision.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

import mpmath as mp

from defaults import (DEFAULT_GUARD_DIGITS, DEFAULT_MAX_HEIGHT, DEFAULT_VERIFY_FACTOR, RECOGNITION_BASIS_NAMES,
                      RECOGNITION_TIERS)
from exactalg import fraction_str
from exceptions import InsufficientPrecisionError, RecognitionError
from mpkernel import ConstantLibrary, tolerance

logger = logging.getLogger(__name__)

_FACTOR = re.compile(r"\s*([*/]?)\s*([A-Za-z][A-Za-z0-9]*(?:\([^)]*\))?|\d+)(?:\^(\d+))?")


def composite_evaluator(library: ConstantLibrary, name: str) -> Callable[[], Any]:
    """
    Evaluator for a product name such as "sqrt3/pi" or "ln2^2"

    Factors are library names or integers, joined by * and /, each with an
    optional ^k.
    """
    if name in library.names():
        return lambda: library.value(name)
    factors = []
    pos = 0
    while pos < len(name):
        m = _FACTOR.match(name, pos)
        if m is None or m.end() == pos:
            raise RecognitionError(f"Cannot parse constant name '{name}'", {"offset": pos})
        op, base, power = m.group(1), m.group(2), int(m.group(3) or 1)
        if base not in library.names() and not base.isdigit():
            raise RecognitionError(f"Unknown constant '{base}' in '{name}'")
        factors.append((op == "/", base, power))
        pos = m.end()

    def evaluate() -> Any:
        acc = mp.mpf(1)
        for divide, base, power in factors:
            v = mp.mpf(int(base)) if base.isdigit() else library.value(base)
            acc = acc / v ** power if divide else acc * v ** power
        return acc

    return evaluate


def constant_from_file(path: str) -> Callable[[], Any]:
    """
    Evaluator for a constant stored as a decimal number in a text file

    Lines starting with # are skipped; the first remaining token is the
    value, re-read at the working precision of every call.

    Raises:
        OSError: the file cannot be read
        RecognitionError: no decimal number in the file
    """
    with open(path, "r", encoding="utf-8") as f:
        tokens = [ln.split()[0] for ln in f if ln.strip() and not ln.lstrip().startswith("#")]
    if not tokens:
        raise RecognitionError(f"No value in {path}")
    text = tokens[0]
    try:
        mp.mpf(text)
    except ValueError:
        raise RecognitionError(f"Value in {path} is not a decimal number", {"value": text[:30]})
    logger.debug(f"Constant from {path}: {len(text)} characters")
    return lambda: mp.mpf(text)


@dataclass
class RecognitionBasis:
    """
    Named constants with evaluators, a height bound and extra guard digits

    ``tiers`` are sizes of nested prefixes tried before the whole basis;
    constants added with ``add`` belong to every prefix.
    """

    names: list
    evaluators: list
    max_height: int = DEFAULT_MAX_HEIGHT
    guard: int = DEFAULT_GUARD_DIGITS
    tiers: tuple = ()
    added: int = 0

    @classmethod
    def from_names(cls, names: Sequence[str], library: Optional[ConstantLibrary] = None,
                   max_height: int = DEFAULT_MAX_HEIGHT, tiers: Sequence[int] = ()) -> "RecognitionBasis":
        library = library or ConstantLibrary()
        evaluators = [composite_evaluator(library, n) for n in names]
        return cls(list(names), evaluators, max_height, tiers=tuple(tiers))

    @classmethod
    def default(cls, library: Optional[ConstantLibrary] = None,
                max_height: int = DEFAULT_MAX_HEIGHT) -> "RecognitionBasis":
        return cls.from_names(RECOGNITION_BASIS_NAMES, library, max_height, RECOGNITION_TIERS)

    def add(self, name: str, evaluator: Callable[[], Any]) -> None:
        """Add a constant that every nested prefix includes."""
        if name in self.names:
            raise RecognitionError(f"Constant '{name}' is already in the basis")
        self.names.insert(self.added, name)
        self.evaluators.insert(self.added, evaluator)
        self.added += 1

    def values(self) -> list:
        return [mp.mpmathify(f()) for f in self.evaluators]

    def sizes(self) -> list:
        """Prefix sizes to try, smallest first, ending with the whole basis."""
        n = len(self.names)
        return sorted({self.added + t for t in self.tiers if self.added + t < n} | {n})

    def prefix(self, size: int) -> "RecognitionBasis":
        if size >= len(self.names):
            return self
        return RecognitionBasis(self.names[:size], self.evaluators[:size], self.max_height, self.guard)

    def required_digits(self, size: Optional[int] = None) -> int:
        """Digits needed to trust a relation of full height over ``size`` constants."""
        size = len(self.names) if size is None else size
        return 2 * int(mp.ceil((size + 1) * mp.log10(self.max_height)))


@dataclass
class ClosedForm:
    """Recognized value: rational coefficients on basis names for each part."""

    real: dict = field(default_factory=dict)
    imag: dict = field(default_factory=dict)
    height: int = 0
    verified_digits: int = 0

    def evaluate(self, basis: RecognitionBasis) -> Any:
        values = dict(zip(basis.names, basis.values()))
        re_part = mp.fsum(mp.mpf(c.numerator) / c.denominator * values[n] for n, c in self.real.items())
        im_part = mp.fsum(mp.mpf(c.numerator) / c.denominator * values[n] for n, c in self.imag.items())
        return mp.mpc(re_part, im_part) if self.imag else re_part

    def __str__(self) -> str:
        return format_relation(self)


def _format_part(coeffs: dict) -> str:
    if not coeffs:
        return "0"
    parts = []
    for name, c in coeffs.items():
        if name == "1":
            text = fraction_str(abs(c))
        elif abs(c) == 1:
            text = name
        else:
            text = f"{fraction_str(abs(c))}*{name}"
        parts.append(("-" if c < 0 else "+", text))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


def format_relation(form: Optional[ClosedForm]) -> str:
    """Human readable closed form, e.g. '-9/64*sqrt3/pi' or '1/3 + (2*pi)*I'."""
    if form is None:
        return "unrecognized"
    if not form.imag:
        return _format_part(form.real)
    if not form.real:
        return f"({_format_part(form.imag)})*I"
    return f"{_format_part(form.real)} + ({_format_part(form.imag)})*I"


def _find_relation(x: Any, values: list, basis: RecognitionBasis, digits: int) -> Optional[tuple]:
    """Relation x = sum q_i b_i from PSLQ; None when none exists within the height."""
    if abs(x) < tolerance(digits):
        return {}, 0
    vec = [x] + values
    rel = mp.pslq(vec, tol=tolerance(digits), maxcoeff=basis.max_height, maxsteps=10 ** 5)
    if rel is None or rel[0] == 0:
        return None
    height = max(abs(r) for r in rel)
    coeffs = {}
    for name, r in zip(basis.names, rel[1:]):
        if r:
            coeffs[name] = Fraction(-r, rel[0])
    return coeffs, height


def recognize_value(v: Any, basis: RecognitionBasis, digits: Optional[int] = None) -> Optional[ClosedForm]:
    """
    Recognize a number as a rational combination of the basis

    Nested prefixes of the basis are tried smallest first, each only when
    the trusted digits cover what its size needs; the first relation that
    verifies wins.

    Args:
        v: Real or complex value computed at the working precision
        basis: Candidate constants
        digits: Trusted digits of v, defaults to the working precision
            minus the guard

    Returns:
        ClosedForm, or None when nothing within the height verifies

    Raises:
        InsufficientPrecisionError: fewer trusted digits than the smallest prefix needs
    """
    digits = digits if digits is not None else mp.mp.dps - basis.guard
    sizes = basis.sizes()
    usable = [k for k in sizes if basis.required_digits(k) <= digits]
    if not usable:
        raise InsufficientPrecisionError(digits, basis.required_digits(sizes[0]))
    v = mp.mpmathify(v)
    for k in usable:
        form = _recognize_over(v, basis.prefix(k), digits)
        if form is not None:
            return form
    logger.debug(f"No relation for {mp.nstr(v, 20)} over {usable[-1]} of {len(basis.names)} constants")
    return None


def _recognize_over(v: Any, basis: RecognitionBasis, digits: int) -> Optional[ClosedForm]:
    values = basis.values()
    found_re = _find_relation(mp.re(v), values, basis, digits)
    found_im = _find_relation(mp.im(v), values, basis, digits)
    if found_re is None or found_im is None:
        return None
    form = ClosedForm(found_re[0], found_im[0], max(found_re[1], found_im[1]))
    with mp.workdps(int(mp.mp.dps * DEFAULT_VERIFY_FACTOR)):
        check = form.evaluate(basis)
    diff = abs(v - check)
    limit = tolerance(digits - 2 * basis.guard) * max(1, abs(v))
    if diff > limit:
        logger.debug(f"Relation {format_relation(form)} failed verification ({mp.nstr(diff, 5)})")
        return None
    form.verified_digits = int(-mp.log10(diff)) if diff > 0 else digits
    logger.debug(f"Recognized {mp.nstr(v, 15)} as {format_relation(form)} over {len(basis.names)} constants")
    return form


@dataclass
class MatrixRecognition:
    """Entrywise recognition results with summary counts."""

    forms: list
    recognized: int
    unrecognized: list


def recognize_matrix(m: Any, basis: RecognitionBasis, digits: Optional[int] = None) -> MatrixRecognition:
    """Recognize every entry; unrecognized entries are listed as (i, j, value), 1-based."""
    rows, cols = m.rows, m.cols
    forms = []
    unrecognized = []
    count = 0
    for i in range(rows):
        row = []
        for j in range(cols):
            form = recognize_value(m[i, j], basis, digits)
            if form is None:
                unrecognized.append((i + 1, j + 1, m[i, j]))
            else:
                count += 1
            row.append(form)
        forms.append(row)
    if unrecognized:
        logger.warning(f"{len(unrecognized)} of {rows * cols} entries unrecognized")
    return MatrixRecognition(forms, count, unrecognized)
