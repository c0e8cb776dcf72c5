#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# connect.py
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
Connection Matrices for FuchsMatch

This module computes connection matrices between local bases at
neighbouring points by equating both bases at matching points in the
common part of their disks of convergence, composes them along paths and
applies the complex conjugation shortcut.

With S^(A) = C S^(B), row i of C expresses basis element i at A in the
basis at B.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import mpmath as mp

from defaults import (DEFAULT_K_VALIDATE, MATCH_ARC_STEP, MATCH_HALF_PLANE_OFFSET)
from diffop import SingularPointInfo
from exceptions import DiskOverlapError, IllConditionedError, MatchingError, PathMismatchError
from frobenius import LocalBasis
from mpkernel import tolerance

logger = logging.getLogger(__name__)


@dataclass
class ConnMatrix:
    """Connection matrix S^(from) = C S^(to) with provenance."""

    from_pt: str
    to_pt: str
    entries: Any
    residual: Any
    condition: Any = None
    provenance: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.entries.rows

    def entry(self, i: int, j: int) -> Any:
        """1-based entry access, matching the printed matrices."""
        return self.entries[i - 1, j - 1]

    def inverse(self) -> "ConnMatrix":
        return ConnMatrix(self.to_pt, self.from_pt, mp.inverse(self.entries), self.residual,
                          self.condition, dict(self.provenance, inverted=True))


def convergence_radius(info: SingularPointInfo, points: Sequence[SingularPointInfo]) -> Any:
    """
    Radius of the disk of convergence in the local variable

    Apparent singularities do not limit it; with nothing left to limit it
    the radius is mp.inf.
    """
    near = tolerance(mp.mp.dps // 2)
    others = [p.value() for p in points
              if not p.is_infinity and not p.apparent and p.name != info.name]
    if info.is_infinity:
        others = [abs(w) for w in others if abs(w) > near]
        return 1 / max(others) if others else mp.inf
    ws = info.value()
    if info.local_map.kind == "identity":
        dist = [abs(w) for w in others if abs(w) > near]
        return min(dist) if dist else mp.inf
    dist = [abs(w - ws) for w in others if abs(w - ws) > near]
    return min(dist) / abs(ws) if dist else mp.inf


def _w_radius(basis: LocalBasis) -> Any:
    """Radius of the disk in the w plane (for infinity: |w| > 1/radius)."""
    if basis.info.is_infinity:
        return 1 / basis.radius
    if basis.info.local_map.kind == "identity":
        return basis.radius
    return basis.radius * abs(basis.info.value())


def balance_point(basis_a: LocalBasis, basis_b: LocalBasis) -> tuple:
    """
    Matching centre where both series converge equally fast

    An unbounded disk counts as reaching just to the other point.

    Returns:
        (w, relative position |x|/radius shared by both disks)
    """
    if basis_a.info.is_infinity and basis_b.info.is_infinity:
        raise MatchingError("Cannot match infinity with itself")
    if basis_a.info.is_infinity or basis_b.info.is_infinity:
        fin, inf = (basis_b, basis_a) if basis_a.info.is_infinity else (basis_a, basis_b)
        a = mp.mpmathify(fin.info.value())
        ra = _w_radius(fin)
        rinf = _w_radius(inf)
        direction = mp.mpf(1) if abs(a) == 0 else a / abs(a)
        if rinf == 0:
            s = ra / 2 if not mp.isinf(ra) else max(abs(a), mp.mpf(1))
            return a + s * direction, (s / ra if not mp.isinf(ra) else mp.mpf(0))
        if mp.isinf(ra):
            s = 2 * rinf
            return a + s * direction, rinf / (abs(a) + s)
        s = (-abs(a) + mp.sqrt(abs(a) ** 2 + 4 * ra * rinf)) / 2
        return a + s * direction, s / ra
    a = mp.mpmathify(basis_a.info.value())
    b = mp.mpmathify(basis_b.info.value())
    d = abs(b - a)
    ra, rb = _w_radius(basis_a), _w_radius(basis_b)
    ea = d if mp.isinf(ra) else ra
    eb = d if mp.isinf(rb) else rb
    t = ea / (ea + eb)
    return a + t * (b - a), d / (ra + rb)


def matching_points(center: Any, scale: Any, count: int) -> list:
    """
    Points on a short half-circle arc about ``center``

    The arc lies below the real axis when Re(center) > 0 and above it
    otherwise, so real negative local variables get log = ln|x| + i pi.
    """
    radius = scale * MATCH_ARC_STEP
    sign = -1 if mp.re(center) > 0 else 1
    offset = mp.mpc(0, sign) * scale * MATCH_HALF_PLANE_OFFSET
    pts = []
    for j in range(count):
        theta = mp.pi * (j + 1) / (count + 1)
        pts.append(center + offset + radius * mp.mpc(mp.cos(theta), sign * mp.sin(theta)))
    return pts


def _split(points: list, k_match: int, k_validate: int) -> tuple:
    val_idx = [i for i in range(1, len(points), 2)][:k_validate]
    while len(val_idx) < k_validate:
        val_idx.append(next(i for i in range(len(points) - 1, -1, -1) if i not in val_idx))
    match = [p for i, p in enumerate(points) if i not in val_idx]
    val = [points[i] for i in sorted(val_idx)]
    return match[:k_match], val


def _values(basis: LocalBasis, w: Any) -> list:
    x = basis.info.local_map.to_local(w)
    if basis.radius is not None and abs(x) >= basis.radius:
        raise DiskOverlapError(f"Matching point outside the disk at {basis.point}",
                               {"abs_x": mp.nstr(abs(x), 10), "radius": mp.nstr(basis.radius, 10)})
    return basis.evaluate(x)


def match_neighbors(basis_a: LocalBasis, basis_b: LocalBasis, k_match: Optional[int] = None,
                    k_validate: int = DEFAULT_K_VALIDATE, center: Any = None) -> ConnMatrix:
    """
    Connection matrix between two bases by series matching

    Args:
        basis_a: Basis at the source point (rows of C)
        basis_b: Basis at the target point (columns of C)
        k_match: Number of matching points, at least the order; the first
            order of them determine C and the rest are validated against it
        k_validate: Number of extra validation points
        center: Optional matching centre in the w plane

    Returns:
        ConnMatrix with residual measured at the validation points

    Raises:
        DiskOverlapError: the disks do not overlap
        IllConditionedError: condition above 10^(P/2)
    """
    n = basis_a.order
    if basis_b.order != n:
        raise MatchingError("Bases have different orders", {"a": basis_a.order, "b": basis_b.order})
    k_match = k_match or n
    if k_match < n:
        raise MatchingError("Need at least order matching points", {"k_match": k_match, "order": n})
    if center is None:
        center, rel = balance_point(basis_a, basis_b)
        if rel >= 1:
            raise DiskOverlapError(f"Disks at {basis_a.point} and {basis_b.point} do not overlap",
                                   {"relative": mp.nstr(rel, 8)})
    else:
        rel = None
    finite = _finite_positions(basis_a, basis_b)
    scale = min(abs(center - p) for p in finite)
    points = matching_points(center, scale, k_match + k_validate)
    match_pts, val_pts = _split(points, k_match, k_validate)
    # the solve is square; surplus matching points only validate
    match_pts, val_pts = match_pts[:n], match_pts[n:] + val_pts
    va = [_values(basis_a, p) for p in match_pts]
    vb = [_values(basis_b, p) for p in match_pts]
    V = mp.matrix(vb)
    inv = mp.inverse(V)
    condition = mp.mnorm(V, 1) * mp.mnorm(inv, 1)
    limit = mp.mpf(10) ** (mp.mp.dps // 2)
    if condition > limit:
        raise IllConditionedError(mp.nstr(condition, 8), mp.nstr(limit, 8))
    C = mp.matrix(n, n)
    for i in range(n):
        rhs = mp.matrix([va[p][i] for p in range(n)])
        col = mp.lu_solve(V, rhs)
        for j in range(n):
            C[i, j] = col[j]
    residual = mp.mpf(0)
    for p in val_pts:
        sa = _values(basis_a, p)
        sb = _values(basis_b, p)
        for i in range(n):
            pred = mp.fsum(C[i, j] * sb[j] for j in range(n))
            residual = max(residual, abs(sa[i] - pred) / max(1, abs(sa[i])))
    logger.info(f"C({basis_a.point},{basis_b.point}): residual {mp.nstr(residual, 5)}, "
                f"condition {mp.nstr(condition, 5)}")
    provenance = {
        "matching_points": [mp.nstr(p, 20) for p in match_pts],
        "validation_points": [mp.nstr(p, 20) for p in val_pts],
        "terms": basis_a.terms,
        "dps": mp.mp.dps,
        "relative_position": mp.nstr(rel, 8) if rel is not None else None,
        "path": [basis_a.point, basis_b.point],
    }
    return ConnMatrix(basis_a.point, basis_b.point, C, residual, condition, provenance)


def _finite_positions(basis_a: LocalBasis, basis_b: LocalBasis) -> list:
    return [mp.mpmathify(b.info.value()) for b in (basis_a, basis_b) if not b.info.is_infinity]


def compose_path(mats: Sequence[ConnMatrix]) -> ConnMatrix:
    """
    Product C(p0,p1) C(p1,p2) ... along a chain

    Raises:
        PathMismatchError: consecutive endpoints differ
    """
    if not mats:
        raise MatchingError("Empty path")
    for left, right in zip(mats, mats[1:]):
        if left.to_pt != right.from_pt:
            raise PathMismatchError(left.to_pt, right.from_pt)
    product = mats[0].entries
    residual = mats[0].residual
    for m in mats[1:]:
        residual = residual * mp.mnorm(m.entries, 1) + mp.mnorm(product, 1) * m.residual
        product = product * m.entries
    path = [mats[0].from_pt] + [m.to_pt for m in mats]
    provenance = dict(mats[-1].provenance, path=path)
    return ConnMatrix(mats[0].from_pt, mats[-1].to_pt, product, residual, None, provenance)


def conjugate_connection(c: ConnMatrix, to_pt: Optional[str] = None, from_pt: Optional[str] = None) -> ConnMatrix:
    """Entrywise conjugate, re-targeted to the conjugate point's basis."""
    n = c.order
    entries = mp.matrix(n, n)
    for i in range(n):
        for j in range(n):
            entries[i, j] = mp.conj(c.entries[i, j])
    provenance = dict(c.provenance, conjugated=True)
    return ConnMatrix(from_pt or c.from_pt, to_pt or c.to_pt, entries, c.residual, c.condition, provenance)


def connection_along(bases: dict, path: Sequence[str], **kwargs: Any) -> ConnMatrix:
    """Match every step of ``path`` (point names keyed into ``bases``) and compose."""
    if len(path) < 2:
        raise MatchingError("Path needs at least two points", {"path": ",".join(path)})
    mats = [match_neighbors(bases[a], bases[b], **kwargs) for a, b in zip(path, path[1:])]
    return compose_path(mats)


def path_consistency(c1: ConnMatrix, c2: ConnMatrix, digits: Optional[int] = None) -> Any:
    """
    Largest entrywise difference between two routes to the same point

    A difference above 10^(-digits) is logged as a warning, never hidden.
    """
    if (c1.from_pt, c1.to_pt) != (c2.from_pt, c2.to_pt):
        raise PathMismatchError(f"{c1.from_pt}->{c1.to_pt}", f"{c2.from_pt}->{c2.to_pt}")
    n = c1.order
    diff = max(abs(c1.entries[i, j] - c2.entries[i, j]) for i in range(n) for j in range(n))
    digits = digits if digits is not None else mp.mp.dps // 4
    if diff > tolerance(digits):
        logger.warning(f"Paths {c1.provenance.get('path')} and {c2.provenance.get('path')} "
                       f"disagree by {mp.nstr(diff, 5)}")
    return diff
