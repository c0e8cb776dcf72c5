#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# result_exporter.py
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
Result Exporter for FuchsMatch

This module turns computed objects into JSON-serializable dictionaries
for the command line output. Exact rationals become "p/q" strings and
multiprecision numbers become decimal strings at the requested number of
digits.
"""

import csv
import io
import logging
from fractions import Fraction
from typing import Any, Optional, Sequence

import mpmath as mp

from exactalg import fraction_str
from recognize import format_relation
from version import distributionString, versionString

logger = logging.getLogger(__name__)


def number_text(value: Any, digits: int) -> Any:
    """Scalar to JSON: exact rationals as text, reals as strings, complex as {re, im}."""
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    value = mp.mpmathify(value)
    if isinstance(value, mp.mpc):
        if mp.im(value) == 0:
            return mp.nstr(mp.re(value), digits)
        return {"re": mp.nstr(mp.re(value), digits), "im": mp.nstr(mp.im(value), digits)}
    return mp.nstr(value, digits)


def matrix_rows(m: Any, digits: int) -> list:
    return [[number_text(m[i, j], digits) for j in range(m.cols)] for i in range(m.rows)]


class ResultExporter:
    """
    Exports computed results as JSON-serializable dictionaries

    Every document carries the program version and the precision it was
    computed at.
    """

    def __init__(self, digits: int = 30, precision: Optional[int] = None, terms: Optional[int] = None):
        """
        Initialize result exporter

        Args:
            digits: Digits printed for floating values
            precision: Working precision of the run
            terms: Series length of the run
        """
        self.digits = digits
        self.precision = precision
        self.terms = terms

    def envelope(self, command: str, payload: dict) -> dict:
        doc = {
            "program": "FuchsMatch",
            "version": versionString,
            "distribution": distributionString,
            "command": command,
            "precision": self.precision,
            "terms": self.terms,
        }
        doc.update(payload)
        return doc

    def point(self, info: Any) -> dict:
        """Singular point data as a table row."""
        return {
            "name": info.name,
            "location": "inf" if info.is_infinity else info.location.describe(),
            "local_variable": info.local_map.describe(),
            "exponents": [fraction_str(e) for e in info.exponents],
            "log_solutions": info.log_count,
            "max_log_power": info.max_log_power,
            "apparent": info.apparent,
        }

    def series(self, s: Any, count: int) -> dict:
        blocks = []
        for b in s.blocks:
            blocks.append({
                "rho": fraction_str(b.rho),
                "logs": [[number_text(c, self.digits) for c in row[:count]] for row in b.coeffs],
            })
        return {"label": s.label, "exponent": fraction_str(s.exponent), "max_log": s.max_log, "blocks": blocks}

    def connection(self, c: Any, recognition: Optional[Any] = None) -> dict:
        """
        Connection matrix with residual and provenance

        Args:
            c: ConnMatrix
            recognition: Optional MatrixRecognition for the entries
        """
        doc = {
            "from": c.from_pt,
            "to": c.to_pt,
            "entries": matrix_rows(c.entries, self.digits),
            "residual": number_text(c.residual, 5),
            "condition": number_text(c.condition, 5) if c.condition is not None else None,
            "provenance": c.provenance,
        }
        if recognition is not None:
            doc["recognized"] = [[format_relation(f) for f in row] for row in recognition.forms]
        return doc

    def monodromy(self, m: Any, recognition: Optional[Any] = None) -> dict:
        doc = {
            "base": m.base_point,
            "around": m.around,
            "entries": matrix_rows(m.entries, self.digits),
            "det": number_text(m.det(), self.digits),
            "provenance": m.provenance,
        }
        if recognition is not None:
            doc["recognized"] = [[format_relation(f) for f in row] for row in recognition.forms]
        return doc

    def decomposition(self, d: Any, singular: Sequence[Any] = ()) -> dict:
        return {
            "point": d.point,
            "coefficients": [number_text(c, self.digits) for c in d.coefficients],
            "singular_part": [
                {
                    "exponent": fraction_str(t.exponent),
                    "log_power": t.log_power,
                    "coefficient": number_text(t.coefficient, self.digits),
                    "series": [number_text(c, self.digits) for c in t.series],
                }
                for t in singular
            ],
        }

    def comparison(self, rows: Sequence[Any]) -> list:
        return [
            {
                "n": r.n,
                "actual": number_text(r.actual, self.digits),
                "predicted": number_text(r.predicted, self.digits),
                "relative_error": number_text(r.relative_error, 5),
                "normalized": number_text(r.normalized, 12),
            }
            for r in rows
        ]

    def comparison_csv(self, rows: Sequence[Any]) -> str:
        """Comparison table as CSV text."""
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["n", "actual", "predicted", "relative_error", "normalized"])
        for r in rows:
            writer.writerow([r.n, mp.nstr(r.actual, self.digits), mp.nstr(r.predicted, self.digits),
                             mp.nstr(r.relative_error, 5), mp.nstr(r.normalized, 12)])
        return buffer.getvalue()
