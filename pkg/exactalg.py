#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# exactalg.py
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
Exact Algebra for FuchsMatch

This module provides the exact substrate used by everything else:
rationals (``fractions.Fraction``), dense univariate polynomials over the
rationals (``RatPoly``), algebraic points given by a minimal polynomial and
an isolating approximation (``AlgebraicPoint``), and a parser for the
polynomial expression grammar used in operator files.

Grammar (no floating literals)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*
    power  := atom (('^'|'**') integer)?
    atom   := integer | variable | '(' expr ')'

Division is only allowed by a nonzero constant, so ``3/4*w^2`` is fine and
``1/w`` is rejected.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Union

import mpmath as mp
import sympy

from defaults import DEFAULT_GUARD_DIGITS
from exceptions import PolySyntaxError, UnknownSymbolError, OperatorError

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]


def to_fraction(value: Any) -> Fraction:
    """Convert an int, Fraction, sympy Rational or 'p/q' string to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"Cannot convert {value!r} to an exact rational")


def fraction_to_mpf(q: Fraction) -> mp.mpf:
    """Exact rational to mpf at the current working precision."""
    return mp.mpf(q.numerator) / q.denominator


def fraction_str(q: Fraction) -> str:
    """'p/q' form, or 'p' for integers."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RatPoly:
    """
    Dense univariate polynomial with rational coefficients

    Coefficients are stored lowest degree first with trailing zeros
    stripped. Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        c = [to_fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # construction helpers

    @classmethod
    def constant(cls, value: Scalar) -> "RatPoly":
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "RatPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_sympy(cls, expr: Any, symbol: sympy.Symbol) -> "RatPoly":
        poly = sympy.Poly(expr, symbol, domain="QQ")
        return cls(reversed([to_fraction(a) for a in poly.all_coeffs()]))

    def to_sympy(self, symbol: sympy.Symbol) -> sympy.Poly:
        return sympy.Poly(list(reversed([sympy.Rational(a.numerator, a.denominator) for a in self._c])) or [0],
                          symbol, domain="QQ")

    # basic properties

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def lead(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, n: int) -> Fraction:
        if 0 <= n < len(self._c):
            return self._c[n]
        return Fraction(0)

    def valuation(self) -> int:
        """Order of vanishing at 0; -1 for the zero polynomial."""
        for n, a in enumerate(self._c):
            if a != 0:
                return n
        return -1

    # ring operations

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly.constant(other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __neg__(self) -> "RatPoly":
        return RatPoly(-a for a in self._c)

    def __add__(self, other: Union["RatPoly", Scalar]) -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = RatPoly.constant(other)
        n = max(len(self._c), len(other._c))
        return RatPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other: Union["RatPoly", Scalar]) -> "RatPoly":
        if not isinstance(other, RatPoly):
            other = RatPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "RatPoly":
        return RatPoly.constant(other) - self

    def __mul__(self, other: Union["RatPoly", Scalar]) -> "RatPoly":
        if not isinstance(other, RatPoly):
            k = to_fraction(other)
            return RatPoly(a * k for a in self._c)
        if not self._c or not other._c:
            return RatPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatPoly":
        if k < 0:
            raise ValueError("Negative power of a polynomial")
        result = RatPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "RatPoly") -> tuple:
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 1)
        inv_lead = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] * inv_lead
            if q == 0:
                continue
            quot[i - dq] = q
            for j, b in enumerate(other._c):
                rem[i - dq + j] -= q * b
        return RatPoly(quot), RatPoly(rem)

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise OperatorError("Polynomial division is not exact", {"divisor_degree": other.degree})
        return q

    # evaluation and calculus

    def __call__(self, x: Any) -> Any:
        """Horner evaluation; works for Fraction, mpf and mpc arguments."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for a in reversed(self._c):
                acc = acc * x + a
            return acc
        acc = mp.mpf(0)
        for a in reversed(self._c):
            acc = acc * x + fraction_to_mpf(a)
        return acc

    def deriv(self) -> "RatPoly":
        return RatPoly(n * a for n, a in enumerate(self._c) if n > 0)

    def taylor_shift(self, a: Scalar) -> "RatPoly":
        """Coefficients of p(x + a)."""
        a = to_fraction(a)
        c = list(self._c)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return RatPoly(c)

    def scale_var(self, k: Scalar) -> "RatPoly":
        """Coefficients of p(k x)."""
        k = to_fraction(k)
        return RatPoly(a * k ** n for n, a in enumerate(self._c))

    def compose(self, inner: "RatPoly") -> "RatPoly":
        """p(inner(x))."""
        acc = RatPoly()
        for a in reversed(self._c):
            acc = acc * inner + a
        return acc

    def reverse(self, n: Optional[int] = None) -> "RatPoly":
        """x^n p(1/x), n defaults to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("Reversal degree below polynomial degree")
        return RatPoly([0] * (n - self.degree) + list(reversed(self._c)))

    def shift_down(self, k: int) -> "RatPoly":
        """p / x^k, requires valuation >= k."""
        if any(a != 0 for a in self._c[:k]):
            raise OperatorError("Polynomial not divisible by the requested power", {"power": k})
        return RatPoly(self._c[k:])

    # content

    def content(self) -> Fraction:
        """Positive rational c with p/c having coprime integer coefficients."""
        if not self._c:
            return Fraction(1)
        num = 0
        den = 1
        for a in self._c:
            num = sympy.igcd(num, a.numerator)
            den = sympy.ilcm(den, a.denominator)
        return Fraction(int(num), int(den))

    def gcd(self, other: "RatPoly", symbol: Optional[sympy.Symbol] = None) -> "RatPoly":
        """Monic gcd over Q."""
        x = symbol or sympy.Symbol("w")
        g = sympy.gcd(self.to_sympy(x), other.to_sympy(x))
        g = RatPoly.from_sympy(g.as_expr(), x)
        return g * (1 / g.lead) if not g.is_zero() else g

    # printing

    def to_string(self, variable: str = "w") -> str:
        """Parser-compatible text, lowest degree first."""
        if not self._c:
            return "0"
        parts = []
        for n, a in enumerate(self._c):
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if n == 0:
                body = fraction_str(mag)
            else:
                mono = variable if n == 1 else f"{variable}^{n}"
                body = mono if mag == 1 else f"{fraction_str(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RatPoly({self.to_string()!r})"


W = RatPoly([0, 1])
ONE = RatPoly([1])


class _Parser:
    """Recursive descent parser over the expression grammar."""

    def __init__(self, text: str, variable: str) -> None:
        self.text = text
        self.data = text.encode("utf-8")
        self.variable = variable
        self.pos = 0

    def error(self, message: str, offset: Optional[int] = None) -> PolySyntaxError:
        return PolySyntaxError(message, self.pos if offset is None else offset, self.text)

    def skip(self) -> None:
        while self.pos < len(self.data) and self.data[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        if self.pos >= len(self.data):
            return ""
        return chr(self.data[self.pos])

    def take(self, token: str) -> bool:
        self.skip()
        if self.data.startswith(token.encode(), self.pos):
            self.pos += len(token)
            return True
        return False

    def parse(self) -> RatPoly:
        if not self.text.strip():
            raise self.error("Empty expression", 0)
        poly = self.expr()
        self.skip()
        if self.pos != len(self.data):
            raise self.error(f"Unexpected character '{chr(self.data[self.pos])}'")
        return poly

    def expr(self) -> RatPoly:
        negate = False
        if self.take("-"):
            negate = True
        else:
            self.take("+")
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            if self.take("+"):
                acc = acc + self.term()
            elif self.take("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> RatPoly:
        acc = self.power()
        while True:
            self.skip()
            if self.data.startswith(b"**", self.pos):
                return acc
            if self.take("*"):
                acc = acc * self.power()
            elif self.peek() == "/":
                start = self.pos
                self.pos += 1
                divisor = self.power()
                if divisor.degree != 0:
                    raise self.error("Division by a non-constant expression", start)
                acc = acc * (1 / divisor.lead)
            else:
                return acc

    def power(self) -> RatPoly:
        base = self.atom()
        if self.take("**") or self.take("^"):
            self.skip()
            start = self.pos
            exponent = self.integer()
            if exponent is None:
                raise self.error("Exponent must be a nonnegative integer", start)
            return base ** exponent
        return base

    def integer(self) -> Optional[int]:
        self.skip()
        start = self.pos
        while self.pos < len(self.data) and chr(self.data[self.pos]).isdigit():
            self.pos += 1
        if start == self.pos:
            return None
        if self.pos < len(self.data) and chr(self.data[self.pos]) in ".eE":
            raise self.error("Floating literals are not allowed", start)
        return int(self.data[start:self.pos])

    def atom(self) -> RatPoly:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if not self.take(")"):
                raise self.error("Missing closing parenthesis")
            return inner
        if c.isdigit():
            return RatPoly.constant(self.integer())
        if c == ".":
            raise self.error("Floating literals are not allowed")
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.data) and (chr(self.data[self.pos]).isalnum() or self.data[self.pos] == ord("_")):
                self.pos += 1
            name = self.data[start:self.pos].decode()
            if name != self.variable:
                raise UnknownSymbolError(name, start, self.variable)
            return W
        if c == "":
            raise self.error("Unexpected end of expression")
        raise self.error(f"Unexpected character '{c}'")


def parse_poly(text: str, variable: str = "w") -> RatPoly:
    """
    Parse a polynomial expression exactly

    Args:
        text: Expression text, e.g. "(4*w-1)^2*(1+2*w)"
        variable: Name of the single allowed symbol

    Returns:
        The expanded polynomial

    Raises:
        PolySyntaxError: with the byte offset of the problem
        UnknownSymbolError: for any other identifier
    """
    return _Parser(text, variable).parse()


@dataclass(frozen=True)
class AlgebraicPoint:
    """
    Root of an irreducible rational polynomial

    ``approx`` is held at the precision the point was created with;
    ``value(dps)`` re-derives it at any other precision from the exact data.
    ``closed_form`` is a sympy expression for degree <= 2.
    """

    min_poly: RatPoly
    approx: Any
    selector: str
    closed_form: Any = None
    label: str = field(default="", compare=False)

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @property
    def rational(self) -> Optional[Fraction]:
        if self.min_poly.degree == 1:
            return -self.min_poly[0] / self.min_poly[1]
        return None

    @property
    def is_real(self) -> bool:
        if self.closed_form is not None:
            return bool(sympy.im(self.closed_form) == 0)
        return abs(mp.im(self.approx)) < mp.mpf(10) ** (-mp.mp.dps // 2)

    def value(self, dps: Optional[int] = None) -> Any:
        """Numeric value (mpf or mpc) at ``dps`` digits."""
        dps = dps or mp.mp.dps
        with mp.workdps(dps + DEFAULT_GUARD_DIGITS):
            q = self.rational
            if q is not None:
                v = fraction_to_mpf(q)
            elif self.closed_form is not None:
                v = mp.mpmathify(sympy.N(self.closed_form, dps + DEFAULT_GUARD_DIGITS))
            else:
                v = _refine_root(self.min_poly, mp.mpmathify(self.approx))
        return +v

    def residual(self) -> Any:
        return abs(self.min_poly(self.value()))

    def describe(self) -> str:
        if self.label:
            return self.label
        q = self.rational
        if q is not None:
            return fraction_str(q)
        if self.closed_form is not None:
            return str(self.closed_form)
        return f"root of {self.min_poly} ({self.selector})"

    def conjugate(self) -> "AlgebraicPoint":
        sel = {"im>0": "im<0", "im<0": "im>0"}.get(self.selector, self.selector)
        cf = sympy.conjugate(self.closed_form) if self.closed_form is not None else None
        return AlgebraicPoint(self.min_poly, mp.conj(self.approx), sel, cf)


def rational_point(q: Scalar, label: str = "") -> AlgebraicPoint:
    """AlgebraicPoint for a rational number."""
    q = to_fraction(q)
    return AlgebraicPoint(RatPoly([-q, 1]), fraction_to_mpf(q), "rational",
                          sympy.Rational(q.numerator, q.denominator), label)


def _refine_root(p: RatPoly, z: Any, steps: int = 200) -> Any:
    dp = p.deriv()
    for _ in range(steps):
        f = p(z)
        d = dp(z)
        if d == 0:
            break
        step = f / d
        z = z - step
        if abs(step) <= abs(z) * mp.mpf(10) ** (-mp.mp.dps):
            break
    return z


def _selector_for(z: Any, index: int) -> str:
    if mp.im(z) > 0:
        return "im>0"
    if mp.im(z) < 0:
        return "im<0"
    return f"real#{index}"


def poly_roots_exact(p: RatPoly, dps: Optional[int] = None) -> list:
    """
    Squarefree factorization over Q with roots of every factor

    Args:
        p: Nonzero polynomial
        dps: Working precision in digits (defaults to the mpmath context)

    Returns:
        List of (factor, multiplicity, points) with ``factor`` monic and
        irreducible; degree <= 2 factors carry exact closed forms
    """
    if p.is_zero():
        raise ValueError("poly_roots_exact needs a nonzero polynomial")
    dps = dps or mp.mp.dps
    x = sympy.Symbol("w")
    _, factors = sympy.factor_list(p.to_sympy(x).as_expr(), x)
    result = []
    with mp.workdps(dps + DEFAULT_GUARD_DIGITS):
        tolerance = mp.mpf(10) ** (-dps + DEFAULT_GUARD_DIGITS)
        for fexpr, mult in factors:
            factor = RatPoly.from_sympy(fexpr, x)
            if factor.degree < 1:
                continue
            factor = factor * (1 / factor.lead)
            points = []
            if factor.degree <= 2:
                exact = sorted(sympy.roots(factor.to_sympy(x), x).keys(),
                               key=lambda r: (float(sympy.re(r)), float(sympy.im(r))))
                for i, r in enumerate(exact):
                    z = mp.mpmathify(sympy.N(r, dps + DEFAULT_GUARD_DIGITS))
                    sel = "rational" if factor.degree == 1 else _selector_for(z, i)
                    points.append(AlgebraicPoint(factor, z, sel, r))
            else:
                approx = mp.polyroots([fraction_to_mpf(a) for a in reversed(factor.coeffs)],
                                      maxsteps=400, extraprec=4 * dps)
                approx = sorted((_refine_root(factor, mp.mpmathify(z)) for z in approx),
                                key=lambda z: (mp.re(z), mp.im(z)))
                for i, z in enumerate(approx):
                    if abs(factor(z)) >= tolerance * max(1, abs(z)) ** factor.degree:
                        raise OperatorError("Numeric root failed verification",
                                            {"factor_degree": factor.degree, "index": i})
                    points.append(AlgebraicPoint(factor, z, _selector_for(z, i)))
            logger.debug(f"Factor {factor} (multiplicity {mult}): {len(points)} roots")
            result.append((factor, int(mult), points))
    return result


class NumberField:
    """
    Q(alpha) = Q[t]/(min_poly) with the embedding alpha -> point.value()

    Whether an element vanishes does not depend on the embedding, so every
    root of the same minimal polynomial yields the same exact decisions.
    """

    def __init__(self, point: AlgebraicPoint) -> None:
        self.point = point
        self.modulus = point.min_poly * (1 / point.min_poly.lead)
        self._powers: dict = {0: RatPoly.constant(1)}
        self._alpha: dict = {}

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def reduce(self, p: RatPoly) -> RatPoly:
        if p.degree < self.degree:
            return p
        return divmod(p, self.modulus)[1]

    def element(self, p: Union[RatPoly, Scalar]) -> "AlgebraicNumber":
        if not isinstance(p, RatPoly):
            p = RatPoly.constant(p)
        return AlgebraicNumber(self, self.reduce(p))

    def invert(self, p: RatPoly) -> RatPoly:
        if p.is_zero():
            raise ZeroDivisionError("Inverse of zero in a number field")
        t = sympy.Symbol("t")
        inv = sympy.invert(p.to_sympy(t).as_expr(), self.modulus.to_sympy(t).as_expr(), t)
        return self.reduce(RatPoly.from_sympy(sympy.expand(inv), t))

    def power(self, k: int) -> RatPoly:
        """alpha^k reduced, negative k allowed."""
        if k not in self._powers:
            if k > 0:
                self._powers[k] = self.reduce(self.power(k - 1) * W)
            else:
                self._powers[k] = self.reduce(self.power(k + 1) * self.invert(W))
        return self._powers[k]

    def alpha(self, dps: int) -> Any:
        if dps not in self._alpha:
            self._alpha[dps] = self.point.value(dps)
        return self._alpha[dps]

    def embed(self, p: RatPoly) -> Any:
        """Numeric value of p(alpha) at the working precision."""
        dps = mp.mp.dps
        height = max((abs(a.numerator).bit_length() - a.denominator.bit_length() for a in p.coeffs), default=0)
        extra = DEFAULT_GUARD_DIGITS + max(0, height * 3 // 10) + 3 * p.degree
        with mp.workdps(dps + extra):
            v = p(self.alpha(dps + extra))
        return +v


class AlgebraicNumber:
    """Element of a NumberField, a polynomial in alpha of degree below the field degree."""

    __slots__ = ("field", "poly", "_inv")

    def __init__(self, field: NumberField, poly: RatPoly) -> None:
        self.field = field
        self.poly = poly
        self._inv = None

    def _lift(self, other: Any) -> Optional[RatPoly]:
        if isinstance(other, AlgebraicNumber):
            return other.poly
        if isinstance(other, (int, Fraction)):
            return RatPoly.constant(other)
        return None

    def __add__(self, other: Any) -> "AlgebraicNumber":
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return AlgebraicNumber(self.field, self.poly + p)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self.field, -self.poly)

    def __sub__(self, other: Any) -> "AlgebraicNumber":
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return AlgebraicNumber(self.field, self.poly - p)

    def __rsub__(self, other: Any) -> "AlgebraicNumber":
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return AlgebraicNumber(self.field, p - self.poly)

    def __mul__(self, other: Any) -> "AlgebraicNumber":
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, self.poly * other)
        if isinstance(other, AlgebraicNumber):
            return AlgebraicNumber(self.field, self.field.reduce(self.poly * other.poly))
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if self._inv is None:
            self._inv = AlgebraicNumber(self.field, self.field.invert(self.poly))
        return self._inv

    def __truediv__(self, other: Any) -> "AlgebraicNumber":
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, self.poly * (1 / to_fraction(other)))
        if isinstance(other, AlgebraicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: Any) -> "AlgebraicNumber":
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return self.poly == p

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash(self.poly)

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def coordinate(self, i: int) -> Fraction:
        """Coefficient of alpha^i."""
        return self.poly[i]

    def numeric(self) -> Any:
        return self.field.embed(self.poly)

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.poly.to_string('alpha')!r})"


def coordinate(value: Any, i: int) -> Fraction:
    """Coefficient of alpha^i of a rational or field element."""
    if isinstance(value, AlgebraicNumber):
        return value.coordinate(i)
    return to_fraction(value) if i == 0 else Fraction(0)


def exact_rank(rows: list) -> int:
    """Rank by fraction-free elimination over any exact field."""
    m = [list(r) for r in rows if r]
    if not m:
        return 0
    n_cols = len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            if f != 0:
                m[i] = [p * a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
