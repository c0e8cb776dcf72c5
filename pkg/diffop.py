#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# diffop.py
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
Differential Operators for FuchsMatch

This module implements exact linear differential operators
``sum p_k(w) (d/dw)^k`` with rational polynomial coefficients.

Operators are stored with cleared denominators in primitive form. Products
and right division are literal Leibniz compositions of the stored
coefficients by default; with ``monic=True`` the right factor is first
normalised to ``(1/p_r) sum p_k D^k``, which is how factorizations of a
monic operator are composed.
"""

import logging
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Any, Optional, Sequence, Union

import mpmath as mp
import sympy

from exactalg import (AlgebraicPoint, NumberField, RatPoly, ONE, coordinate, fraction_to_mpf, fraction_str,
                      parse_poly, poly_roots_exact, rational_point, to_fraction)
from exceptions import (NonFuchsianError, OperatorError, OperatorFileError,
                        PolySyntaxError, VariableMismatchError)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiffOperator:
    """Exact differential operator, coefficients p_0..p_order."""

    coeffs: tuple
    variable: str = "w"
    label: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> RatPoly:
        return self.coeffs[-1]

    def __str__(self) -> str:
        name = self.label or "L"
        return f"{name} (order {self.order}, leading degree {self.leading.degree})"

    @classmethod
    def from_polys(cls, coeffs: Sequence[RatPoly], variable: str = "w", label: str = "") -> "DiffOperator":
        """Build an operator in primitive form."""
        return cls(tuple(primitive_form(coeffs)), variable, label)

    @classmethod
    def derivative(cls, variable: str = "w") -> "DiffOperator":
        return cls((RatPoly(), ONE), variable, "D")

    def with_label(self, label: str) -> "DiffOperator":
        return DiffOperator(self.coeffs, self.variable, label)

    def to_text(self) -> str:
        """Operator file text."""
        lines = []
        if self.label:
            lines.append(f"label: {self.label}")
        lines.append(f"order: {self.order}")
        lines.append(f"var: {self.variable}")
        for k, p in enumerate(self.coeffs):
            lines.append(f"coeff[{k}]: {p.to_string(self.variable)}")
        return "\n".join(lines) + "\n"


def primitive_form(coeffs: Sequence[RatPoly]) -> list:
    """
    Divide out the polynomial content and normalise the scale

    The result has integer coefficients with content 1 and a leading
    polynomial whose leading coefficient is positive.
    """
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    if all(p.is_zero() for p in coeffs):
        raise OperatorError("Zero operator")
    x = sympy.Symbol("w")
    nonzero = [p.to_sympy(x).as_expr() for p in coeffs if not p.is_zero()]
    g = sympy.gcd_list(nonzero, x) if len(nonzero) > 1 else nonzero[0]
    g = RatPoly.from_sympy(g, x)
    if g.degree > 0:
        coeffs = [p.exact_div(g) for p in coeffs]
    num, den = 0, 1
    for p in coeffs:
        for a in p.coeffs:
            num = sympy.igcd(num, a.numerator)
            den = sympy.ilcm(den, a.denominator)
    factor = Fraction(int(den), int(num))
    if coeffs[-1].lead * factor < 0:
        factor = -factor
    return [p * factor for p in coeffs]


# Operator files

_KEY = re.compile(r"^\s*(order|var|label|coeff\[(\d+)\])\s*:\s*(.*)$")


def parse_operator(text: str, path: Optional[str] = None) -> DiffOperator:
    """
    Parse the operator file format

    Lines are ``order: n``, ``var: w``, optional ``label: name`` and
    ``coeff[k]: <poly-expr>``; ``#`` starts a comment and a line without a
    key continues the previous coefficient.

    Args:
        text: File contents
        path: File name for error messages

    Returns:
        The operator in primitive form
    """
    order = None
    variable = "w"
    label = ""
    raw: dict = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _KEY.match(line)
        if m:
            key, index, value = m.group(1), m.group(2), m.group(3).strip()
            if key == "order":
                try:
                    order = int(value)
                except ValueError:
                    raise OperatorFileError(f"Invalid order '{value}'", path, lineno)
                current = None
            elif key == "var":
                variable = value
                current = None
            elif key == "label":
                label = value
                current = None
            else:
                current = int(index)
                if current in raw:
                    raise OperatorFileError(f"Duplicate coefficient {current}", path, lineno)
                raw[current] = (value, lineno)
        elif current is not None:
            value, start = raw[current]
            raw[current] = (value + " " + line.strip(), start)
        else:
            raise OperatorFileError("Line outside any coefficient", path, lineno)
    if order is None:
        raise OperatorFileError("Missing 'order:' line", path)
    missing = [k for k in range(order + 1) if k not in raw]
    if missing or max(raw, default=0) > order:
        raise OperatorFileError(f"Coefficients must be given for k = 0..{order}", path)
    coeffs = []
    for k in range(order + 1):
        value, lineno = raw[k]
        try:
            coeffs.append(parse_poly(value, variable))
        except PolySyntaxError as e:
            raise OperatorFileError(f"coeff[{k}]: {e.message} at offset {e.offset}", path, lineno)
    if coeffs[-1].is_zero():
        raise OperatorFileError("Leading coefficient is zero", path)
    return DiffOperator.from_polys(coeffs, variable, label)


def load_operator(path: Union[str, Path]) -> DiffOperator:
    """Read an operator file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise OperatorFileError(f"Cannot read operator file: {e}", str(path))
    op = parse_operator(text, str(path))
    if not op.label:
        op = op.with_label(path.stem)
    logger.debug(f"Loaded {op} from {path}")
    return op


# Products

def _compose(left: Sequence[RatPoly], right: Sequence[RatPoly], beta: RatPoly) -> list:
    """
    Cleared coefficients of left o ((1/beta) sum right_j D^j)

    Uses D^k o (b/beta) = sum_i C(k,i) (b/beta)^(i) D^(k-i) with
    (b/beta)^(i) = N_i / beta^(i+1), N_0 = b, N_(i+1) = N_i' beta - (i+1) N_i beta'.
    The whole product is multiplied by beta^(order(left)+1).
    """
    ra = len(left) - 1
    rb = len(right) - 1
    dbeta = beta.deriv()
    numerators = []
    for b in right:
        chain = [b]
        for i in range(ra):
            n = chain[-1]
            chain.append(n.deriv() * beta - n * dbeta * (i + 1))
        numerators.append(chain)
    beta_pow = [ONE]
    for _ in range(ra):
        beta_pow.append(beta_pow[-1] * beta)
    out = [RatPoly() for _ in range(ra + rb + 1)]
    for k, a in enumerate(left):
        if a.is_zero():
            continue
        for i in range(k + 1):
            weight = a * beta_pow[ra - i] * comb(k, i)
            for j in range(rb + 1):
                n = numerators[j][i]
                if n.is_zero():
                    continue
                out[k - i + j] = out[k - i + j] + weight * n
    return out


def op_mul(a: DiffOperator, b: DiffOperator, monic: bool = False) -> DiffOperator:
    """
    Operator product a o b

    Args:
        a: Left factor
        b: Right factor
        monic: Compose with the monic normalisation of b instead of the
            literal Leibniz product of the stored coefficients

    Returns:
        Product in primitive form, order a.order + b.order
    """
    if a.variable != b.variable:
        raise VariableMismatchError(a.variable, b.variable)
    beta = b.leading if monic else ONE
    coeffs = _compose(a.coeffs, b.coeffs, beta)
    label = f"{a.label}*{b.label}" if a.label and b.label else ""
    result = DiffOperator.from_polys(coeffs, a.variable, label)
    logger.debug(f"op_mul: {a.label or 'a'} * {b.label or 'b'} -> order {result.order}")
    return result


def op_gauge(op: DiffOperator, den: RatPoly) -> DiffOperator:
    """Operator y -> op(y / den), cleared and primitive."""
    coeffs = _compose(op.coeffs, [ONE], den)
    return DiffOperator.from_polys(coeffs, op.variable, f"{op.label}/gauge" if op.label else "")


def op_apply(op: DiffOperator, series: Sequence[Any]) -> list:
    """
    Apply the operator to a truncated power series in w

    Args:
        op: Operator
        series: Coefficients s_0..s_(N-1) (Fractions or mpmath numbers)

    Returns:
        The first N - order coefficients of sum p_k s^(k); exact when the
        input is exact
    """
    n_terms = len(series)
    r = op.order
    if n_terms <= r:
        raise OperatorError("Series too short for the operator order", {"terms": n_terms, "order": r})
    keep = n_terms - r
    exact = all(isinstance(s, (int, Fraction)) for s in series)
    zero = Fraction(0) if exact else mp.mpf(0)
    out = [zero] * keep
    for k, p in enumerate(op.coeffs):
        if p.is_zero():
            continue
        deriv = []
        for n in range(n_terms - k):
            f = 1
            for t in range(1, k + 1):
                f *= n + t
            deriv.append(series[n + k] * f)
        pc = p.coeffs if exact else [fraction_to_mpf(c) for c in p.coeffs]
        for i, c in enumerate(pc):
            if c == 0:
                continue
            for n in range(i, keep):
                if n - i < len(deriv):
                    out[n] += c * deriv[n - i]
    return out


def verify_factor(a: DiffOperator, right: DiffOperator, monic: bool = False) -> tuple:
    """
    Right division a = q o right

    Pseudo-division: the running remainder is left-multiplied by the
    leading polynomial of ``right`` before each reduction step so that all
    coefficients stay polynomial.

    Args:
        a: Dividend
        right: Right factor
        monic: Return the quotient with respect to the monic normalisation
            of ``right``

    Returns:
        (True, q) with op_mul(q, right, monic=monic) == a when right
        divides a, else (False, remainder)
    """
    if a.variable != right.variable:
        raise VariableMismatchError(a.variable, right.variable)
    r = right.order
    if r > a.order:
        return False, a
    beta = right.leading
    rem = list(a.coeffs)
    quot = [RatPoly() for _ in range(a.order - r + 1)]
    for m in range(a.order, r - 1, -1):
        rho = rem[m]
        if rho.is_zero():
            continue
        d = m - r
        # D^d o right, literal
        shifted = _compose([RatPoly()] * d + [ONE], right.coeffs, ONE)
        rem = [p * beta for p in rem]
        for idx, s in enumerate(shifted):
            if idx < len(rem):
                rem[idx] = rem[idx] - rho * s
        quot = [q * beta for q in quot]
        quot[d] = quot[d] + rho
        if not rem[m].is_zero():
            raise OperatorError("Pseudo-division failed to cancel the leading term", {"order": m})
    remainder = rem[:r]
    if any(not p.is_zero() for p in remainder):
        logger.debug(f"verify_factor: nonzero remainder of order {len(remainder) - 1}")
        return False, DiffOperator.from_polys(remainder, a.variable, "remainder")
    # beta^s a = Q o right (literal) = (Q o beta) o monic(right)
    q = _compose(quot, [beta], ONE) if monic else quot
    return True, DiffOperator.from_polys(q, a.variable)


# Local variables

@dataclass(frozen=True)
class LocalMap:
    """
    Local variable at a point

    kind is "identity" (x = w, used at 0), "scaled" (x = 1 - w/ws) or
    "inverse" (x = 1/w, used at infinity).
    """

    kind: str
    point: Optional[AlgebraicPoint] = None

    def to_local(self, w: Any) -> Any:
        if self.kind == "identity":
            return w
        if self.kind == "inverse":
            return 1 / w
        return 1 - w / self.point.value()

    def to_global(self, x: Any) -> Any:
        if self.kind == "identity":
            return x
        if self.kind == "inverse":
            return 1 / x
        return self.point.value() * (1 - x)

    def describe(self) -> str:
        if self.kind == "identity":
            return "x = w"
        if self.kind == "inverse":
            return "x = 1/w"
        return f"x = 1 - w/({self.point.describe()})"


def local_coefficients(op: DiffOperator, lmap: LocalMap) -> tuple:
    """
    Coefficients of the operator in the local variable

    Returns:
        (coefficient lists q_0..q_r lowest degree first, field). At rational
        points and infinity the lists hold Fractions and field is None; at
        other algebraic points they hold exact AlgebraicNumbers of the
        returned NumberField.
    """
    r = op.order
    if lmap.kind == "identity":
        return [list(p.coeffs) for p in op.coeffs], None
    if lmap.kind == "inverse":
        dmax = max(p.degree for p in op.coeffs)
        # D_w^k = sum_j c[k][j] D_x^j, D_w = -x^2 D_x
        chain = [[ONE]]
        minus_x2 = RatPoly([0, 0, -1])
        for k in range(r):
            prev = chain[-1]
            nxt = [RatPoly() for _ in range(len(prev) + 1)]
            for j, c in enumerate(prev):
                nxt[j] = nxt[j] + minus_x2 * c.deriv()
                nxt[j + 1] = nxt[j + 1] + minus_x2 * c
            chain.append(nxt)
        out = [RatPoly() for _ in range(r + 1)]
        for k, p in enumerate(op.coeffs):
            if p.is_zero():
                continue
            head = p.reverse(p.degree) * RatPoly.monomial(dmax - p.degree)
            for j, c in enumerate(chain[k]):
                out[j] = out[j] + head * c
        return [list(p.coeffs) for p in out], None
    ws_exact = lmap.point.rational
    if ws_exact is not None:
        lin = RatPoly([ws_exact, -ws_exact])
        out = []
        for k, p in enumerate(op.coeffs):
            out.append(list((p.compose(lin) * ((-1 / ws_exact) ** k)).coeffs))
        return out, None
    # x^i coefficient of p_k(ws (1 - x)) (-1/ws)^k is
    # (-1)^(i+k) sum_n C(n, i) a_n ws^(n-k)
    field = NumberField(lmap.point)
    out = []
    for k, p in enumerate(op.coeffs):
        q = []
        for i in range(p.degree + 1):
            acc = RatPoly()
            for n in range(i, p.degree + 1):
                a = p[n]
                if a != 0:
                    acc = acc + field.power(n - k) * (comb(n, i) * a)
            q.append(field.element(acc * (-1) ** (i + k)))
        out.append(q)
    return out, field


def falling_factorial(k: int) -> list:
    """Integer coefficients of theta (theta-1) ... (theta-k+1)."""
    poly = [1]
    for i in range(k):
        nxt = [0] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] += c
            nxt[d] -= i * c
        poly = nxt
    return poly


@dataclass
class ThetaForm:
    """
    Operator written as sum_j x^j Q_j(theta), theta = x d/dx

    ``polys[j]`` lists the exact coefficients of Q_j lowest degree first;
    ``field`` is the number field they live in, None for rationals.
    """

    polys: list
    shift: int
    field: Optional[NumberField] = None

    @property
    def exact(self) -> bool:
        """True when the coefficients are rationals."""
        return self.field is None

    @property
    def indicial(self) -> list:
        return self.polys[0]

    @property
    def length(self) -> int:
        return len(self.polys)


def theta_form(local: Sequence[Sequence[Any]], field: Optional[NumberField] = None,
               where: str = "point") -> ThetaForm:
    """
    Convert local coefficients to theta form, checking the Fuchs condition

    Raises:
        NonFuchsianError: when the indicial polynomial has degree < order
    """
    r = len(local) - 1
    vals = []
    for q in local:
        v = next((n for n, c in enumerate(q) if c != 0), None)
        vals.append(v)
    if vals[r] is None:
        raise OperatorError("Leading coefficient vanishes identically in the local variable")
    shift = max(k - v for k, v in enumerate(vals) if v is not None)
    fuchs = r - vals[r]
    if shift > fuchs:
        worst = max(vals[r] - v for k, v in enumerate(vals) if v is not None and k - v > fuchs)
        raise NonFuchsianError(where, worst, r)
    length = max(shift - k + len(q) for k, q in enumerate(local) if vals[k] is not None)
    polys = [[Fraction(0)] * (r + 1) for _ in range(length)]
    for k, q in enumerate(local):
        if vals[k] is None:
            continue
        ff = falling_factorial(k)
        for n, c in enumerate(q):
            if c == 0:
                continue
            j = n + shift - k
            if j < 0:
                continue
            for d, f in enumerate(ff):
                if f:
                    polys[j][d] = polys[j][d] + c * f
    while len(polys) > 1 and all(c == 0 for c in polys[-1]):
        polys.pop()
    return ThetaForm(polys, shift, field)


def indicial_roots(form: ThetaForm) -> list:
    """
    Exponents with multiplicity, ascending

    Over a number field the indicial polynomial splits into one rational
    polynomial per power of alpha; its rational roots are the roots of
    their gcd, with the gcd's multiplicities.

    Raises:
        OperatorError: when some exponent is not rational
    """
    q0 = form.indicial
    r = len(q0) - 1
    th = sympy.Symbol("theta")
    width = form.field.degree if form.field is not None else 1
    parts = []
    for i in range(width):
        coeffs = [coordinate(c, i) for c in q0]
        if any(coeffs):
            parts.append(sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])),
                                    th, domain="QQ"))
    g = parts[0]
    for p in parts[1:]:
        g = sympy.gcd(g, p)
    found = sympy.roots(g, th) if g.degree() > 0 else {}
    if sum(found.values()) != r or any(not z.is_rational for z in found):
        raise OperatorError("Indicial polynomial has non-rational roots", {"degree": r})
    out = []
    for z, m in found.items():
        out.extend([Fraction(int(z.p), int(z.q))] * m)
    return sorted(out)


@dataclass
class SingularPointInfo:
    """Exact singular point with its local exponent and log structure."""

    name: str
    location: Optional[AlgebraicPoint]
    local_map: LocalMap
    exponents: tuple
    log_count: int
    max_log_power: int
    apparent: bool
    multiplicity: int = 1

    @property
    def is_infinity(self) -> bool:
        return self.location is None

    def value(self) -> Any:
        """Location in the w plane (mpf/mpc); infinity gives mp.inf."""
        return mp.inf if self.location is None else self.location.value()


def make_point(location: Optional[AlgebraicPoint], name: str = "") -> tuple:
    """(name, LocalMap) for a location; None means infinity."""
    if location is None:
        return name or "inf", LocalMap("inverse")
    q = location.rational
    if q == 0:
        return name or "0", LocalMap("identity", location)
    return name or location.describe(), LocalMap("scaled", location)


def analyze_point(op: DiffOperator, location: Optional[AlgebraicPoint], name: str = "",
                  multiplicity: int = 1) -> SingularPointInfo:
    """
    Exponents, log count and apparent flag at one point

    Everything is decided in exact arithmetic, over Q(alpha) when the
    point is an irrational algebraic number.
    """
    from frobenius import log_structure

    name, lmap = make_point(location, name)
    local, field = local_coefficients(op, lmap)
    form = theta_form(local, field, name)
    exponents = indicial_roots(form)
    log_count, max_log = log_structure(form, exponents)
    apparent = (log_count == 0 and all(e >= 0 and e.denominator == 1 for e in exponents)
                and len(set(exponents)) == len(exponents))
    info = SingularPointInfo(name, location, lmap, tuple(exponents), log_count, max_log, apparent, multiplicity)
    logger.debug(f"Point {name}: exponents {[fraction_str(e) for e in exponents]}, "
                 f"N={log_count}, P={max_log}, apparent={apparent}")
    return info


def singular_points(op: DiffOperator, dps: Optional[int] = None) -> list:
    """
    All roots of the leading coefficient plus infinity

    Conjugate roots share their local structure, so each irreducible
    factor of the leading coefficient is analysed once.

    Args:
        op: Fuchsian operator
        dps: Precision for numeric roots (defaults to the mpmath context)

    Returns:
        List of SingularPointInfo, finite points first in factor order

    Raises:
        NonFuchsianError: if some point is irregular
    """
    points = []
    for factor, mult, roots in poly_roots_exact(op.leading, dps):
        first = analyze_point(op, roots[0], "", mult)
        points.append(first)
        for loc in roots[1:]:
            name, lmap = make_point(loc)
            points.append(replace(first, name=name, location=loc, local_map=lmap))
    points.append(analyze_point(op, None, "inf"))
    logger.info(f"{op.label or 'operator'}: {len(points)} singular points "
                f"({sum(1 for p in points if p.apparent)} apparent)")
    return points


def point_at(value: Any) -> AlgebraicPoint:
    """Rational AlgebraicPoint from a number or 'p/q' text."""
    return rational_point(to_fraction(value))
