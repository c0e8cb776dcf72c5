#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# monodromy.py
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
Monodromy Matrices for FuchsMatch

Local monodromy in a pinned local basis, conjugation into a common base
basis through connection matrices, the product identity check and Jordan
structure of the resulting matrices.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Optional, Sequence

import mpmath as mp

from connect import ConnMatrix
from defaults import DEFAULT_LOOP_ORIENTATION
from exceptions import ConfigValueError, MatchingError
from frobenius import LocalBasis, to_num
from mpkernel import tolerance

logger = logging.getLogger(__name__)


def omega(orientation: str = DEFAULT_LOOP_ORIENTATION) -> Any:
    """Shift of log(x) along one loop: 2 pi i counterclockwise in x."""
    if orientation == "ccw":
        return mp.mpc(0, 2 * mp.pi)
    if orientation == "cw":
        return mp.mpc(0, -2 * mp.pi)
    raise ConfigValueError("Unknown loop orientation", "orientation", orientation)


@dataclass
class MonoMatrix:
    """Monodromy around ``around`` expressed in the basis at ``base_point``."""

    base_point: str
    around: str
    entries: Any
    omega: Any
    recognized: Optional[list] = None
    provenance: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.entries.rows

    def entry(self, i: int, j: int) -> Any:
        return self.entries[i - 1, j - 1]

    def det(self) -> Any:
        return mp.det(self.entries)


def _loop_coordinates(basis: LocalBasis, series: Any, om: Any) -> list:
    """Canonical coordinates of a series continued once around the point."""
    out = []
    for e, k in basis.slots:
        phase = mp.expjpi(2 * to_num(e) * (1 if om.imag > 0 else -1))
        acc = mp.mpf(0)
        for j in range(k, series.max_log + 1):
            c = series.coefficient(e, j)
            if c:
                acc += comb(j, k) * om ** (j - k) * to_num(c)
        out.append(phase * acc * factorial(k))
    return out


def local_monodromy(basis: LocalBasis, orientation: str = DEFAULT_LOOP_ORIENTATION) -> MonoMatrix:
    """
    Monodromy of a local basis in itself

    x^rho picks up exp(2 pi i rho) and log(x) shifts by omega; the continued
    elements are re-expressed in the same basis through their canonical
    coordinates.

    Args:
        basis: Pinned or canonical LocalBasis
        orientation: "ccw" or "cw" in the local variable

    Returns:
        MonoMatrix with row i the image of element i
    """
    om = omega(orientation)
    n = basis.order
    rows = [_loop_coordinates(basis, s, om) for s in basis.solutions]
    T = mp.matrix(rows)
    if basis.pin_matrix is None:
        P = mp.eye(n)
    else:
        P = mp.matrix([[to_num(v) for v in row] for row in basis.pin_matrix])
    M = T * mp.inverse(P)
    cleanup = tolerance(mp.mp.dps // 2)
    for i in range(n):
        for j in range(n):
            if abs(M[i, j]) < cleanup:
                M[i, j] = mp.mpf(0)
    logger.debug(f"Local monodromy at {basis.point} ({orientation})")
    return MonoMatrix(basis.point, basis.point, M, om, provenance={"orientation": orientation})


def global_monodromy(c: ConnMatrix, local: MonoMatrix) -> MonoMatrix:
    """
    C l C^-1: the local monodromy moved into the basis at c.from_pt

    Raises:
        MatchingError: c does not end at the point of ``local`` or is singular
    """
    if c.to_pt != local.around:
        raise MatchingError("Connection does not reach the monodromy point",
                            {"to": c.to_pt, "around": local.around})
    try:
        inv = mp.inverse(c.entries)
    except ZeroDivisionError:
        raise MatchingError("Connection matrix is singular", {"from": c.from_pt, "to": c.to_pt})
    M = c.entries * local.entries * inv
    provenance = dict(local.provenance, path=c.provenance.get("path"))
    return MonoMatrix(c.from_pt, local.around, M, local.omega, provenance=provenance)


def product_identity(ms: Sequence[MonoMatrix]) -> Any:
    """
    Max-norm of M1 M2 ... Mr - Id

    Raises:
        MatchingError: matrices live in different base bases
    """
    if not ms:
        raise MatchingError("No monodromy matrices")
    base = ms[0].base_point
    for m in ms:
        if m.base_point != base:
            raise MatchingError("Monodromies in different bases", {"base": base, "other": m.base_point})
    product = mp.eye(ms[0].order)
    for m in ms:
        product = product * m.entries
    n = ms[0].order
    residual = max(abs(product[i, j] - (1 if i == j else 0)) for i in range(n) for j in range(n))
    logger.info(f"Product of {len(ms)} monodromies around {[m.around for m in ms]}: "
                f"residual {mp.nstr(residual, 5)}")
    return residual


def _rank(m: Any, tol: Any) -> int:
    sv = mp.svd_c(m, compute_uv=False)
    scale = max(1, max(abs(s) for s in sv))
    return sum(1 for s in sv if abs(s) > tol * scale)


def jordan_blocks(m: MonoMatrix, eigenvalue: Any, digits: Optional[int] = None) -> list:
    """
    Sizes of the Jordan blocks for one eigenvalue, largest first

    From r_k = rank((M - lambda)^k): blocks of size >= k number r_(k-1) - r_k.
    """
    digits = digits if digits is not None else mp.mp.dps // 2
    tol = tolerance(digits)
    n = m.order
    shifted = m.entries - eigenvalue * mp.eye(n)
    ranks = [n]
    power = mp.eye(n)
    for _ in range(n):
        power = power * shifted
        ranks.append(_rank(power, tol))
        if ranks[-1] == ranks[-2]:
            break
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least)):
        exactly = at_least[k] - (at_least[k + 1] if k + 1 < len(at_least) else 0)
        sizes.extend([k + 1] * exactly)
    return sorted(sizes, reverse=True)


def eigenvalues_on_circle(m: MonoMatrix, exponents: Sequence[Fraction], digits: Optional[int] = None) -> bool:
    """True when every eigenvalue is exp(2 pi i rho) for some local exponent rho."""
    digits = digits if digits is not None else mp.mp.dps // 2
    targets = {mp.expjpi(2 * to_num(e)) for e in exponents}
    if m.order == 1:
        ev = [m.entries[0, 0]]
    else:
        ev = mp.eig(m.entries, left=False, right=False)
    # a block of size s moves its eigenvalue by about eps^(1/s)
    tol = tolerance(digits // m.order)
    return all(min(abs(v - t) for t in targets) < tol for v in ev)
