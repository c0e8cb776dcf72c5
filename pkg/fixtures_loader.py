#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# fixtures_loader.py
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
Fixtures Loader for FuchsMatch

This module resolves shipped fixture names ("chi3-Z2N1", "chi3-L6") to
operators, singular point data and pinned local bases. Operators given
as products are composed with op_mul at load time. Bases are cached per
(operator, point, precision, terms).
"""

import json
import logging
import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional

import mpmath as mp
import sympy

from connect import ConnMatrix, conjugate_connection, connection_along, convergence_radius
from diffop import (DiffOperator, SingularPointInfo, analyze_point, load_operator, op_mul, point_at,
                    singular_points)
from exactalg import AlgebraicPoint, RatPoly, rational_point
from exceptions import FixtureDataError, PinError, UnknownFixtureError
from frobenius import BasisPin, LocalBasis, apply_pin, local_basis

logger = logging.getLogger(__name__)

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")
W = sympy.Symbol("w")


def fixture_names() -> list:
    """Names of the shipped fixture descriptors."""
    if not os.path.isdir(FIXTURE_DIR):
        return []
    return sorted(f[:-5] for f in os.listdir(FIXTURE_DIR) if f.endswith(".json"))


def location_from_text(text: str) -> AlgebraicPoint:
    """
    AlgebraicPoint from a closed form such as "1/4" or "-3/8+sqrt(7)*I/8"

    Raises:
        UnknownFixtureError: the text is not an algebraic number
    """
    try:
        expr = sympy.nsimplify(sympy.sympify(text, locals={"I": sympy.I}))
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise FixtureDataError(f"Invalid point value '{text}': {e}")
    if expr.is_Rational:
        return rational_point(f"{expr.p}/{expr.q}")
    poly = sympy.minimal_polynomial(expr, W)
    min_poly = RatPoly.from_sympy(poly, W)
    min_poly = min_poly * (1 / min_poly.lead)
    approx = mp.mpmathify(sympy.N(expr, mp.mp.dps + 10))
    im = mp.im(approx)
    selector = "im>0" if im > 0 else "im<0" if im < 0 else "real#0"
    return AlgebraicPoint(min_poly, approx, selector, expr)


@dataclass
class Fixture:
    """A loaded fixture descriptor with lazily built operators and bases."""

    name: str
    descriptor: dict
    operators: Dict[str, DiffOperator] = field(default_factory=dict)
    _singular: Dict[str, list] = field(default_factory=dict)
    _infos: Dict[tuple, SingularPointInfo] = field(default_factory=dict)
    _bases: Dict[tuple, LocalBasis] = field(default_factory=dict)
    _pins: Dict[str, dict] = field(default_factory=dict)

    @classmethod
    def from_operator_file(cls, path: str) -> "Fixture":
        """Ad-hoc fixture around a single operator file, based at 0."""
        label = os.path.splitext(os.path.basename(path))[0]
        if not os.path.exists(path):
            raise FixtureDataError(f"Operator file not found: {path}")
        descriptor = {"operator": label, "base": "0", "operators": {label: {"file": os.path.abspath(path)}}}
        return cls(path, descriptor)

    @property
    def main(self) -> str:
        return self.descriptor["operator"]

    @property
    def base_point(self) -> str:
        return self.descriptor.get("base", "0")

    @property
    def point_names(self) -> list:
        declared = [p["name"] for p in self.descriptor.get("points", [])]
        return declared or [p.name for p in self.singular()]

    @property
    def paths(self) -> dict:
        return self.descriptor.get("paths", {})

    @property
    def monodromy_order(self) -> list:
        return list(self.descriptor.get("monodromy_order", []))

    @property
    def physical(self) -> Optional[dict]:
        return self.descriptor.get("physical")

    def operator(self, label: Optional[str] = None) -> DiffOperator:
        """Operator by label, composing products on first use."""
        label = label or self.main
        if label in self.operators:
            return self.operators[label]
        desc = self.descriptor.get("operators", {}).get(label)
        if desc is None:
            raise FixtureDataError(f"Fixture {self.name} has no operator {label}")
        if "file" in desc:
            op = load_operator(os.path.join(FIXTURE_DIR, desc["file"]))
        else:
            parts = [load_operator(os.path.join(FIXTURE_DIR, f)) for f in desc["compose"]]
            op = parts[-1]
            for left in reversed(parts[:-1]):
                op = op_mul(left, op, monic=True)
        op = op.with_label(label)
        self.operators[label] = op
        logger.info(f"Fixture {self.name}: operator {label} of order {op.order}")
        return op

    def singular(self, label: Optional[str] = None) -> list:
        """All singular points of an operator (cached)."""
        label = label or self.main
        if label not in self._singular:
            self._singular[label] = singular_points(self.operator(label))
        return self._singular[label]

    def _descriptor_point(self, name: str) -> Optional[dict]:
        for p in self.descriptor.get("points", []):
            if p["name"] == name:
                return p
        return None

    def is_ordinary(self, name: str) -> bool:
        entry = self._descriptor_point(name)
        return bool(entry and entry.get("ordinary"))

    def point_info(self, name: str, label: Optional[str] = None) -> SingularPointInfo:
        """
        Point data under the fixture's name for it

        Points that are not singular for the operator (ordinary points of
        a right factor, or the ordinary point on a route) are analysed
        directly. Names the descriptor does not list resolve against the
        operator's own singular points, then as rationals.
        """
        label = label or self.main
        key = (label, name)
        if key in self._infos:
            return self._infos[key]
        entry = self._descriptor_point(name)
        if name == "inf" or (entry is not None and "value" not in entry):
            match = next(p for p in self.singular(label) if p.is_infinity)
            info = replace(match, name=name)
        elif entry is None:
            info = self._undeclared_point(name, label)
        else:
            location = location_from_text(entry["value"])
            target = location.value()
            match = None
            for p in self.singular(label):
                if not p.is_infinity and abs(p.value() - target) < mp.mpf(10) ** (-(mp.mp.dps // 2)):
                    match = p
                    break
            if match is not None:
                info = replace(match, name=name)
            else:
                info = analyze_point(self.operator(label), location, name)
        self._infos[key] = info
        return info

    def _undeclared_point(self, name: str, label: str) -> SingularPointInfo:
        for p in self.singular(label):
            if p.name == name:
                return p
        try:
            location = point_at(name)
        except (ValueError, ZeroDivisionError):
            raise FixtureDataError(f"Fixture {self.name} has no point {name}",
                                   {"points": ",".join(self.point_names)})
        for p in self.singular(label):
            if not p.is_infinity and p.location.rational == location.rational:
                return replace(p, name=name)
        return analyze_point(self.operator(label), location, name)

    def pins(self, label: str) -> Optional[dict]:
        """Pin dictionaries of an operator, by point name."""
        if label in self._pins:
            return self._pins[label]
        desc = self.descriptor.get("operators", {}).get(label, {})
        if "pins" not in desc:
            self._pins[label] = None
            return None
        path = os.path.join(FIXTURE_DIR, desc["pins"])
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise FixtureDataError(f"Cannot read pins {desc['pins']}: {e}")
        self._pins[label] = {p["point"]: dict(p, operator=data.get("operator", label)) for p in data["pins"]}
        return self._pins[label]

    def basis(self, name: str, terms: int, label: Optional[str] = None, pinned: bool = True) -> LocalBasis:
        """
        Local basis at a point, pinned when the fixture ships a pin

        Raises:
            PinError: a pin refers to a missing source operator
        """
        label = label or self.main
        key = (label, name, mp.mp.dps, terms, pinned)
        if key in self._bases:
            return self._bases[key]
        op = self.operator(label)
        info = self.point_info(name, label)
        points = self.singular(label)
        b = local_basis(op, info, terms, points=points)
        b.radius = convergence_radius(info, points)
        pins = self.pins(label) if pinned else None
        if pins and name in pins:
            pin = BasisPin.from_dict(pins[name])
            sources = {}
            for src in pin.sources():
                if src not in self.descriptor.get("operators", {}):
                    raise PinError(f"Pin source {src} is not an operator of {self.name}")
                sources[src] = self.basis(name, terms, src)
            b = apply_pin(b, pin, sources)
        logger.debug(f"Fixture {self.name}: basis {label} at {name}, N={terms}")
        self._bases[key] = b
        return b

    def bases(self, terms: int, names: Optional[list] = None) -> Dict[str, LocalBasis]:
        return {n: self.basis(n, terms) for n in (names or self.point_names)}

    def connection(self, target: str, terms: int, path: Optional[list] = None, **kwargs: Any) -> ConnMatrix:
        """
        C(base, target) along the fixture path or an explicit one

        A path entry {"conjugate": p} conjugates C(base, p).
        """
        route = path if path is not None else self.paths.get(target, [self.base_point, target])
        if target == self.base_point and path is None:
            n = self.operator().order
            return ConnMatrix(target, target, mp.eye(n), mp.mpf(0), mp.mpf(1), {"path": [target]})
        if isinstance(route, dict) and "conjugate" in route:
            other = self.connection(route["conjugate"], terms, **kwargs)
            return conjugate_connection(other, to_pt=target)
        bases = {n: self.basis(n, terms) for n in route}
        return connection_along(bases, route, **kwargs)


_CACHE: Dict[str, Fixture] = {}


def load_fixture(name: str) -> Fixture:
    """
    Load a fixture descriptor by name

    Raises:
        UnknownFixtureError: no such fixture
    """
    if name in _CACHE:
        return _CACHE[name]
    path = os.path.join(FIXTURE_DIR, f"{name}.json")
    if not os.path.exists(path):
        raise UnknownFixtureError(name)
    try:
        with open(path, "r", encoding="utf-8") as f:
            descriptor = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureDataError(f"Cannot read fixture {name}: {e}")
    fixture = Fixture(name, descriptor)
    _CACHE[name] = fixture
    logger.info(f"Loaded fixture {name}")
    return fixture


def clear_cache() -> None:
    _CACHE.clear()
