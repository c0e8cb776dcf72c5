#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# physical.py
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
Physical Solution Analysis for FuchsMatch

Decomposes a designated solution, given by its weights on the base point
basis, in the local basis at any other point through a connection matrix,
extracts its singular part and tests cancellation of log terms.

A rational global summand (for the susceptibility, the closed form
w/(3(1-4w)) carried by the order one direct summand) can be attached; its
principal part is added to the singular part.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import mpmath as mp
import sympy

from connect import ConnMatrix
from exactalg import RatPoly
from exceptions import MatchingError
from frobenius import LocalBasis, combine, eval_logseries, to_num
from mpkernel import log_branch, tolerance

logger = logging.getLogger(__name__)

W_SYMBOL = sympy.Symbol("w")
X_SYMBOL = sympy.Symbol("x")


@dataclass
class SingularTerm:
    """Coefficient series of x^exponent log(x)^log_power in a decomposition."""

    exponent: Fraction
    log_power: int
    coefficient: Any
    series: list = field(default_factory=list)


@dataclass
class Decomposition:
    """Designated solution as sum_j coefficients[j] S_j at ``point``."""

    point: str
    coefficients: list
    basis: Optional[LocalBasis] = None
    rational: Any = None
    residual: Any = None

    def zero_mask(self, digits: Optional[int] = None) -> list:
        tol = tolerance(digits if digits is not None else mp.mp.dps // 2)
        return [abs(c) < tol for c in self.coefficients]


def basis_weights(series: Any, basis: LocalBasis) -> list:
    """Weights of a solution on a pinned basis, from canonical coordinates."""
    coords = [to_num(v) for v in basis.coordinates(series)]
    if basis.pin_matrix is None:
        return coords
    P = mp.matrix([[to_num(v) for v in row] for row in basis.pin_matrix])
    # row vector: coords = weights . P
    sol = mp.lu_solve(P.T, mp.matrix(coords))
    return [sol[i] for i in range(basis.order)]


def decompose_at(weights: Sequence[Any], conn: ConnMatrix, basis: Optional[LocalBasis] = None,
                 rational: Any = None) -> Decomposition:
    """
    Coefficients of the designated solution in the basis at conn.to_pt

    Args:
        weights: Row vector over the base point basis
        conn: C(base, target)
        basis: Target LocalBasis, needed for singular parts
        rational: Optional sympy expression in w added to the solution

    Raises:
        MatchingError: length or basis mismatch
    """
    n = conn.order
    if len(weights) != n:
        raise MatchingError("Weight vector does not match the connection", {"weights": len(weights), "order": n})
    if basis is not None and (basis.point != conn.to_pt or basis.order != n):
        raise MatchingError("Basis does not match the connection target",
                            {"basis": basis.point, "target": conn.to_pt})
    coeffs = [mp.fsum(to_num(weights[i]) * conn.entries[i, j] for i in range(n)) for j in range(n)]
    logger.debug(f"Decomposition at {conn.to_pt}: {[mp.nstr(c, 8) for c in coeffs]}")
    return Decomposition(conn.to_pt, coeffs, basis, rational, conn.residual)


def _sympy_num(value: Any) -> Any:
    digits = mp.mp.dps + 5
    re_part = mp.mpf(str(sympy.N(sympy.re(value), digits)))
    im_part = sympy.im(value)
    if im_part == 0:
        return re_part
    return mp.mpc(re_part, mp.mpf(str(sympy.N(im_part, digits))))


def rational_principal_part(expr: Any, basis: LocalBasis) -> dict:
    """
    Negative powers of the local variable in a rational function of w

    Returns:
        {exponent: coefficient} with exact sympy coefficients converted to mp
    """
    info = basis.info
    if info.is_infinity:
        local = expr.subs(W_SYMBOL, 1 / X_SYMBOL)
    elif info.local_map.kind == "identity":
        local = expr.subs(W_SYMBOL, X_SYMBOL)
    else:
        ws = info.location.closed_form
        local = expr.subs(W_SYMBOL, ws * (1 - X_SYMBOL))
    local = sympy.together(sympy.simplify(local))
    out = {}
    lead = sympy.series(local, X_SYMBOL, 0, 1).removeO()
    for term in sympy.Add.make_args(sympy.expand(lead)):
        coeff, power = term.as_coeff_exponent(X_SYMBOL)
        if power < 0:
            out[Fraction(int(power))] = _sympy_num(coeff)
    return out


def singular_part(d: Decomposition, max_terms: int = 6, digits: Optional[int] = None) -> list:
    """
    Singular terms of a decomposition

    Collects every log power k >= 1 and every log-free term whose exponent
    is not a nonnegative integer. Coefficients below 10^(-digits) count as
    zero; nothing else is rounded.

    Returns:
        List of SingularTerm sorted by (log_power desc, exponent)
    """
    if d.basis is None:
        raise MatchingError("Decomposition has no target basis", {"point": d.point})
    tol = tolerance(digits if digits is not None else mp.mp.dps // 2)
    pairs = [(c, s) for c, s in zip(d.coefficients, d.basis.solutions) if abs(c) >= tol]
    terms = []
    if pairs:
        total = combine([(c, s.numeric()) for c, s in pairs], "phys")
        for b in total.blocks:
            for k, row in enumerate(b.coeffs):
                nz = [n for n, c in enumerate(row) if abs(c) >= tol]
                if not nz:
                    continue
                if k == 0:
                    for n in nz:
                        e = b.rho + n
                        if e < 0 or e.denominator != 1:
                            terms.append(SingularTerm(e, 0, row[n], list(row[n:n + max_terms])))
                            if e.denominator != 1:
                                break
                    continue
                first = nz[0]
                terms.append(SingularTerm(b.rho + first, k, row[first], list(row[first:first + max_terms])))
    if d.rational is not None:
        for e, c in rational_principal_part(d.rational, d.basis).items():
            for t in terms:
                if t.log_power == 0 and t.exponent == e:
                    t.coefficient += c
                    if t.series:
                        t.series[0] += c
                    break
            else:
                terms.append(SingularTerm(e, 0, c, [c]))
    terms = [t for t in terms if abs(t.coefficient) >= tol]
    terms.sort(key=lambda t: (-t.log_power, t.exponent))
    logger.info(f"Singular part at {d.point}: {len(terms)} terms")
    return terms


def log_forms(basis: LocalBasis) -> list:
    """
    Leading log coefficients as linear forms on the basis

    For every (exponent, log power) where the log rows of some basis
    element start, the coefficients of x^e log(x)^k across the basis. A
    combination sum_j c_j S_j is log free at leading order exactly when
    every form vanishes on (c_j).

    Returns:
        List of (exponent, log_power, [l_j]) with the highest log power first
    """
    tol = tolerance(mp.mp.dps // 2)
    positions = set()
    for s in basis.solutions:
        for b in s.blocks:
            for k in range(1, len(b.coeffs)):
                n = next((n for n, c in enumerate(b.coeffs[k]) if abs(to_num(c)) > tol), None)
                if n is not None:
                    positions.add((b.rho + n, k))
    ordered = sorted(positions, key=lambda p: (-p[1], p[0]))
    return [(e, k, [to_num(s.coefficient(e, k)) for s in basis.solutions]) for e, k in ordered]


def cancellation_test(d: Decomposition) -> Any:
    """
    Size of the log content of a decomposition

    The largest |sum_j c_j l_j| over the forms of log_forms; at the roots
    of 1 + 3w + 4w^2 with the susceptibility weights this is |a23 + 3 a43|.
    """
    if d.basis is None:
        raise MatchingError("Decomposition has no target basis", {"point": d.point})
    forms = log_forms(d.basis)
    value = max((abs(mp.fsum(c * l for c, l in zip(d.coefficients, row))) for _, _, row in forms),
                default=mp.mpf(0))
    logger.info(f"Log cancellation at {d.point}: {mp.nstr(value, 5)} over {len(forms)} forms")
    return value


def _carries_logs(total: Any) -> bool:
    """Log rows above rounding level, relative to the log free row."""
    if total.max_log == 0:
        return False
    if total.exact:
        return True
    scale = max((abs(to_num(c)) for b in total.blocks for c in b.coeffs[0]), default=mp.mpf(0))
    logs = max((abs(to_num(c)) for b in total.blocks for row in b.coeffs[1:] for c in row), default=mp.mpf(0))
    return logs > tolerance(mp.mp.dps // 2) * max(scale, 1)


def physical_series(basis: LocalBasis, weights: Sequence[Any], terms: int, rational: Any = None) -> list:
    """
    Power series of the designated solution at the base point

    The weighted combination must be log free; numeric log rows at rounding
    level are dropped. Exact weights on an exact basis give exact Fractions.

    Raises:
        MatchingError: the combination carries logs
    """
    pairs = [(Fraction(w) if isinstance(w, (int, Fraction)) else w, s)
             for w, s in zip(weights, basis.solutions) if w != 0]
    total = combine(pairs, "phys")
    if _carries_logs(total):
        raise MatchingError("Designated solution is not a power series at the base point")
    zero = Fraction(0) if total.exact else mp.mpf(0)
    out = [zero] * terms
    for b in total.blocks:
        if b.rho.denominator != 1 or b.rho < 0:
            raise MatchingError("Designated solution is not a power series at the base point")
        for n, c in enumerate(b.coeffs[0]):
            idx = int(b.rho) + n
            if idx < terms:
                out[idx] += c
    if rational is not None:
        for n, c in enumerate(rational_taylor(rational, terms)):
            out[n] += c if total.exact else to_num(c)
    return out


def rational_taylor(expr: Any, terms: int) -> list:
    """Taylor coefficients at w = 0 of a rational sympy expression, as Fractions."""
    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    N = RatPoly.from_sympy(num, W_SYMBOL)
    D = RatPoly.from_sympy(den, W_SYMBOL)
    if D[0] == 0:
        raise MatchingError("Rational summand has a pole at the base point", {"summand": str(expr)})
    out = []
    for n in range(terms):
        acc = N[n] - sum((D[j] * out[n - j] for j in range(1, min(n, D.degree) + 1)), Fraction(0))
        out.append(acc / D[0])
    return out


def reconstruction_residual(d: Decomposition, base: LocalBasis, weights: Sequence[Any], points: Sequence[Any]) -> Any:
    """
    Largest mismatch between the decomposition and the base series

    Both sides are evaluated at w-plane points inside both disks.
    """
    if d.basis is None:
        raise MatchingError("Decomposition has no target basis", {"point": d.point})
    worst = mp.mpf(0)
    for w in points:
        xa = base.info.local_map.to_local(w)
        xb = d.basis.info.local_map.to_local(w)
        lhs = mp.fsum(to_num(c) * v for c, v in zip(weights, base.evaluate(xa)))
        lnx = log_branch(xb)
        rhs = mp.fsum(c * eval_logseries(s, xb, d.basis.radius, lnx)[0]
                      for c, s in zip(d.coefficients, d.basis.solutions))
        worst = max(worst, abs(lhs - rhs) / max(1, abs(lhs)))
    return worst
