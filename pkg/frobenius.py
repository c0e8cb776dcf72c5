#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# frobenius.py
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
Frobenius Engine for FuchsMatch

Local bases of generalized series solutions at a regular singular point.

The operator is written in theta form ``sum_j x^j Q_j(theta)``. Exponents
are grouped into classes modulo the integers; within a class with leader
``lam`` a solution is ``sum_n sum_k c[n][k] x^(lam+n) log(x)^k / k!`` and the
coefficients satisfy, for every n and k,

    sum_m Q_0^(m)(lam+n)/m! c[n][k+m] = - sum_(j>=1) sum_m Q_j^(m)(lam+n-j)/m! c[n-j][k+m]

At a root of Q_0 of multiplicity mu the slots c[n][0..mu-1] are free. The
canonical basis element seeded at a free slot has that slot equal to 1 and
every other free slot equal to 0. For any solution, its free-slot values
are therefore its coordinates in the canonical basis.

Stored series use plain log powers: ``coeffs[k][n]`` multiplies
``x^(rho+n) log(x)^k``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Optional, Sequence

import mpmath as mp
import sympy

from defaults import (BASIS_CHECK_TERMS, DEFAULT_EXACT_TERMS, DEFAULT_GUARD_DIGITS, LOG_DEPTH_MARGIN,
                      MAX_GROWTH_DIGITS, TAIL_TERMS)
from diffop import (DiffOperator, SingularPointInfo, ThetaForm, local_coefficients,
                    theta_form)
from exactalg import AlgebraicNumber, exact_rank, fraction_str, fraction_to_mpf, poly_roots_exact, to_fraction
from exceptions import (FrobeniusError, InsufficientTermsError, PinError, QualityError, ResidualError,
                        SeriesDomainError)
from mpkernel import log_branch, power_branch, tolerance

logger = logging.getLogger(__name__)


def to_num(v: Any) -> Any:
    """Exact scalar to mpmath, anything else unchanged."""
    if isinstance(v, Fraction):
        return fraction_to_mpf(v)
    if isinstance(v, int):
        return mp.mpf(v)
    if isinstance(v, AlgebraicNumber):
        return v.numeric()
    return v


def _is_exact(v: Any) -> bool:
    return isinstance(v, (int, Fraction))


def _taylor(poly: Sequence[Any], s: Any, count: int) -> list:
    """First ``count`` Taylor coefficients of poly at s."""
    c = list(poly)
    n = len(c)
    for i in range(min(count, n)):
        for j in range(n - 2, i - 1, -1):
            c[j] += s * c[j + 1]
    zero = Fraction(0) if _is_exact(s) else mp.mpf(0)
    return (c + [zero] * count)[:count]


@dataclass
class SeriesBlock:
    """x^rho sum_k log(x)^k sum_n coeffs[k][n] x^n"""

    rho: Fraction
    coeffs: list

    @property
    def max_log(self) -> int:
        return len(self.coeffs) - 1

    @property
    def terms(self) -> int:
        return len(self.coeffs[0]) if self.coeffs else 0


@dataclass
class LogSeries:
    """
    Generalized series solution at one point

    ``exponent`` is the seed exponent and ``max_log`` the highest log power
    with a nonzero coefficient.
    """

    point: str
    exponent: Fraction
    max_log: int
    blocks: list
    terms: int
    label: str = ""

    @property
    def exact(self) -> bool:
        return all(_is_exact(c) for b in self.blocks for row in b.coeffs for c in row)

    def coefficient(self, e: Any, k: int) -> Any:
        """Plain coefficient of x^e log(x)^k."""
        e = to_fraction(e)
        total = None
        for b in self.blocks:
            n = e - b.rho
            if n.denominator != 1 or n < 0 or k >= len(b.coeffs) or n >= b.terms:
                continue
            v = b.coeffs[k][int(n)]
            total = v if total is None else total + v
        return Fraction(0) if total is None else total

    def log_part(self, k: int) -> list:
        """Coefficients of log(x)^k of the first block, indexed by n."""
        b = self.blocks[0]
        if k >= len(b.coeffs):
            return [Fraction(0)] * b.terms
        return list(b.coeffs[k])

    def numeric(self) -> "LogSeries":
        blocks = [SeriesBlock(b.rho, [[to_num(c) for c in row] for row in b.coeffs]) for b in self.blocks]
        return LogSeries(self.point, self.exponent, self.max_log, blocks, self.terms, self.label)

    def scaled(self, factor: Any) -> "LogSeries":
        return combine([(factor, self)], self.label)

    def rebase_log(self, c: Any) -> "LogSeries":
        """
        Rewrite in powers of log(x/c)

        log(x)^k = sum_i C(k,i) log(c)^(k-i) log(x/c)^i, so the new
        coefficient of log(x/c)^i collects C(k,i) log(c)^(k-i) old[k].
        """
        lc = log_branch(to_num(c))
        blocks = []
        for b in self.blocks:
            K = len(b.coeffs)
            new = [[mp.mpf(0)] * b.terms for _ in range(K)]
            for k in range(K):
                for i in range(k + 1):
                    w = comb(k, i) * lc ** (k - i)
                    row = b.coeffs[k]
                    for n in range(b.terms):
                        new[i][n] += w * to_num(row[n])
            blocks.append(SeriesBlock(b.rho, new))
        return LogSeries(self.point, self.exponent, self.max_log, blocks, self.terms, self.label)

    def __str__(self) -> str:
        return f"LogSeries({self.label or self.point}: x^{fraction_str(self.exponent)}, log^{self.max_log}, N={self.terms})"


def combine(terms: Sequence[tuple], label: str = "") -> LogSeries:
    """
    Linear combination sum a_i S_i of series at the same point

    Blocks whose exponents differ by an integer are merged onto the
    smaller exponent.
    """
    if not terms:
        raise FrobeniusError("Empty combination")
    numeric = any(not _is_exact(a) or not s.exact for a, s in terms)
    classes: dict = {}
    for a, s in terms:
        for b in s.blocks:
            key = b.rho - (b.rho.numerator // b.rho.denominator)
            lo = classes.get(key)
            classes[key] = b.rho if lo is None else min(lo, b.rho)
    zero = mp.mpf(0) if numeric else Fraction(0)
    n_terms = min(s.terms for _, s in terms)
    out: dict = {}
    for key, rho in classes.items():
        K = 0
        length = 0
        for _, s in terms:
            for b in s.blocks:
                if b.rho - (b.rho.numerator // b.rho.denominator) == key:
                    K = max(K, len(b.coeffs))
                    length = max(length, int(b.rho - rho) + b.terms)
        out[key] = (rho, [[zero] * length for _ in range(K)])
    for a, s in terms:
        a = to_num(a) if numeric else a
        if a == 0:
            continue
        for b in s.blocks:
            key = b.rho - (b.rho.numerator // b.rho.denominator)
            rho, acc = out[key]
            off = int(b.rho - rho)
            for k, row in enumerate(b.coeffs):
                dst = acc[k]
                for n, c in enumerate(row):
                    if c:
                        dst[n + off] += a * (to_num(c) if numeric else c)
    blocks = []
    for key in sorted(out, key=lambda q: out[q][0]):
        rho, acc = out[key]
        while len(acc) > 1 and all(_zeroish(c) for c in acc[-1]):
            acc.pop()
        blocks.append(SeriesBlock(rho, acc))
    nonzero = [b for b in blocks if any(not _zeroish(c) for row in b.coeffs for c in row)] or blocks[:1]
    exponent = min(_seed_exponent(b) for b in nonzero)
    max_log = max(b.max_log for b in nonzero)
    return LogSeries(terms[0][1].point, exponent, max_log, nonzero, n_terms, label)


def _zeroish(c: Any) -> bool:
    if _is_exact(c):
        return c == 0
    return abs(c) <= tolerance(mp.mp.dps - 5)


def _seed_exponent(b: SeriesBlock) -> Fraction:
    for n in range(b.terms):
        if any(not _zeroish(row[n]) for row in b.coeffs):
            return b.rho + n
    return b.rho


@dataclass
class ExponentClass:
    """Exponents congruent modulo the integers."""

    leader: Fraction
    multiplicities: dict

    @property
    def size(self) -> int:
        return sum(self.multiplicities.values())

    @property
    def span(self) -> int:
        return max(self.multiplicities)

    def slots(self) -> list:
        """Free slots (n, k) in seeding order."""
        return [(n, k) for n in sorted(self.multiplicities) for k in range(self.multiplicities[n])]


def exponent_classes(exponents: Sequence[Fraction]) -> list:
    """Group exponents into classes modulo Z, leaders ascending."""
    groups: dict = {}
    for e in exponents:
        key = e - (e.numerator // e.denominator)
        groups.setdefault(key, []).append(e)
    out = []
    for key, members in groups.items():
        leader = min(members)
        mults: dict = {}
        for e in members:
            n = int(e - leader)
            mults[n] = mults.get(n, 0) + 1
        out.append(ExponentClass(leader, mults))
    return sorted(out, key=lambda c: c.leader)


def _numeric_form(form: ThetaForm) -> list:
    return [[to_num(c) for c in q] for q in form.polys]


def solve_class(polys: Sequence[Sequence[Any]], cls: ExponentClass, terms: int, exact: bool) -> list:
    """
    Run the recurrence for every canonical element of one class

    Args:
        polys: Theta-form polynomials Q_j (exact or numeric)
        cls: Exponent class
        terms: Number of series orders
        exact: Work in Fractions

    Returns:
        List of (slot, c) with c[n][k] in divided-power normalisation
    """
    K = cls.size
    J = len(polys)
    slots = cls.slots()
    zero = Fraction(0) if exact else mp.mpf(0)
    lam = cls.leader if exact else fraction_to_mpf(cls.leader)
    elements = [[] for _ in slots]
    top = [-1] * len(slots)
    for N in range(terms):
        taylor = [_taylor(polys[j], lam + (N - j), K + 1) for j in range(0, min(N, J - 1) + 1)]
        t0 = taylor[0]
        mu = cls.multiplicities.get(N, 0)
        if t0[mu] == 0 if exact else abs(t0[mu]) == 0:
            raise FrobeniusError("Indicial data inconsistent with exponent multiplicities", {"n": N})
        for idx, (n0, k0) in enumerate(slots):
            c = elements[idx]
            if N < n0:
                c.append([zero] * K)
                continue
            rhs = [zero] * K
            kmax = top[idx]
            if kmax >= 0:
                for j in range(1, len(taylor)):
                    prev = c[N - j]
                    tj = taylor[j]
                    for k in range(kmax + 1):
                        acc = zero
                        for m in range(kmax - k + 1):
                            v = prev[k + m]
                            if v:
                                acc += tj[m] * v
                        rhs[k] -= acc
            new = [zero] * K
            if N == n0:
                new[k0] = Fraction(1) if exact else mp.mpf(1)
            for k in range(K - 1 - mu, -1, -1):
                acc = rhs[k]
                for m in range(mu + 1, K - k):
                    v = new[k + m]
                    if v:
                        acc -= t0[m] * v
                new[k + mu] = acc / t0[mu]
            c.append(new)
            for k in range(K - 1, -1, -1):
                if new[k] != 0 if exact else not _zeroish(new[k]):
                    top[idx] = max(top[idx], k)
                    break
    return list(zip(slots, elements))


def _to_series(point: str, cls: ExponentClass, slot: tuple, c: list, terms: int) -> LogSeries:
    n0, k0 = slot
    K = cls.size
    coeffs = []
    for k in range(K):
        f = factorial(k)
        coeffs.append([c[n][k] / f for n in range(terms)])
    while len(coeffs) > 1 and all(_zeroish(v) for v in coeffs[-1]):
        coeffs.pop()
    block = SeriesBlock(cls.leader, coeffs)
    return LogSeries(point, cls.leader + n0, len(coeffs) - 1, [block], terms)


def log_structure(form: ThetaForm, exponents: Sequence[Fraction], depth: Optional[int] = None) -> tuple:
    """
    (log_count, max_log_power) from the exact recurrence

    Logs can only enter at resonances, so running every class to its span
    decides the structure. log_count is the order minus the dimension of
    the log-free solutions.
    """
    order = len(exponents)
    classes = exponent_classes(exponents)
    if depth is None:
        depth = max(c.span for c in classes) + LOG_DEPTH_MARGIN
    log_free = 0
    max_log = 0
    for cls in classes:
        results = solve_class(form.polys, cls, depth, True)
        rows = []
        for _, c in results:
            rows.append([c[n][k] for n in range(depth) for k in range(1, cls.size)])
            for n in range(depth):
                for k in range(cls.size - 1, 0, -1):
                    if c[n][k] != 0:
                        max_log = max(max_log, k)
                        break
        if cls.size == 1:
            log_free += 1
            continue
        if form.exact:
            rank = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in rows]).rank()
        else:
            rank = exact_rank(rows)
        log_free += len(rows) - rank
    return order - log_free, max_log


def _local_abs(info: SingularPointInfo, w: Any) -> Any:
    """|x| of a finite w in the local variable at info."""
    if info.is_infinity:
        return mp.inf if w == 0 else 1 / abs(w)
    return abs(info.local_map.to_local(w))


def growth_digits(op: DiffOperator, info: SingularPointInfo, terms: int,
                  points: Optional[Sequence[SingularPointInfo]] = None) -> int:
    """
    Digits the forward recurrence loses over ``terms`` orders

    Rounding errors grow like (1/r)^n with r the nearest root of the local
    leading coefficient, apparent ones included, while the solutions grow
    no faster than (1/R)^n with R the nearest point that limits
    convergence. Without ``points`` every root counts as limiting at
    worst at the farthest one.
    """
    if points is None:
        limits = [(_local_abs(info, loc.value()), None) for _, _, roots in poly_roots_exact(op.leading)
                  for loc in roots]
    else:
        limits = [(_local_abs(info, p.value()), not p.apparent) for p in points
                  if not p.is_infinity and p.name != info.name]
    limits = [(d, lim) for d, lim in limits if d > tolerance(mp.mp.dps // 2) and not mp.isinf(d)]
    if not limits:
        return 0
    nearest = min(d for d, _ in limits)
    farthest = max(mp.mpf(1), max(d for d, _ in limits))
    blocking = [d for d, lim in limits if lim]
    reach = min(min(blocking), farthest) if blocking else farthest
    if reach <= nearest:
        return 0
    return int(mp.ceil(terms * mp.log10(reach / nearest)))


@dataclass
class LocalBasis:
    """
    Ordered basis of local solutions at one point

    ``slots`` lists the free slots (exponent, log power) of the canonical
    basis; ``pin_matrix`` (rows = basis elements) expresses the current
    solutions in canonical coordinates, None for the canonical basis.
    """

    info: SingularPointInfo
    solutions: list
    slots: list
    terms: int
    canonical: list = field(default_factory=list)
    pin_matrix: Any = None
    pin: Any = None
    radius: Any = None

    @property
    def order(self) -> int:
        return len(self.solutions)

    @property
    def point(self) -> str:
        return self.info.name

    def coordinates(self, series: LogSeries) -> list:
        """Canonical coordinates: free-slot plain coefficients times k!."""
        return [series.coefficient(e, k) * factorial(k) for e, k in self.slots]

    def evaluate(self, x: Any) -> list:
        """Values of all solutions at local x."""
        lnx = log_branch(x)
        return [eval_logseries(s, x, self.radius, lnx)[0] for s in self.solutions]

    def numeric(self) -> "LocalBasis":
        return LocalBasis(self.info, [s.numeric() for s in self.solutions], self.slots, self.terms,
                          [s.numeric() for s in self.canonical], self.pin_matrix, self.pin, self.radius)


def local_basis(op: DiffOperator, info: SingularPointInfo, terms: int,
                exact: Optional[bool] = None, exact_limit: int = DEFAULT_EXACT_TERMS,
                points: Optional[Sequence[SingularPointInfo]] = None) -> LocalBasis:
    """
    Canonical local basis at a point

    Numeric recurrences run with enough guard digits to absorb the growth
    of rounding errors (see growth_digits); at rational points their
    first orders are checked against the exact recurrence.

    Args:
        op: Fuchsian operator
        info: Point data from diffop.analyze_point / singular_points
        terms: Series length N
        exact: Force exact (True) or numeric (False) coefficients; by default
            exact at rational points when terms <= exact_limit
        exact_limit: Largest N for automatic exact mode
        points: All singular points of op, sharpens the guard digits

    Returns:
        LocalBasis ordered by seed exponent, then log power

    Raises:
        InsufficientTermsError: terms do not reach past the exponent gaps
        QualityError: the recurrence would need more than MAX_GROWTH_DIGITS guard digits
        ResidualError: numeric coefficients disagree with the exact ones
    """
    local, field = local_coefficients(op, info.local_map)
    form = theta_form(local, field, info.name)
    classes = exponent_classes(info.exponents)
    gap = max(c.span for c in classes)
    if terms <= gap + op.order:
        raise InsufficientTermsError(terms, gap + op.order)
    use_exact = form.exact and (terms <= exact_limit if exact is None else exact)
    if use_exact:
        raw = [(cls, slot, c) for cls in classes for slot, c in solve_class(form.polys, cls, terms, True)]
    else:
        raw = _numeric_solve(op, info, form, classes, terms, points)
    series = []
    for cls, slot, c in raw:
        s = _to_series(info.name, cls, slot, c, terms)
        series.append((cls.leader + slot[0], slot[1], s))
    series.sort(key=lambda t: (t[0], t[1]))
    solutions = []
    slots = []
    for i, (e, k, s) in enumerate(series):
        s.label = f"S{i + 1}"
        solutions.append(s)
        slots.append((e, k))
    logger.debug(f"local_basis at {info.name}: {len(solutions)} elements, N={terms}, "
                 f"{'exact' if use_exact else 'numeric'}")
    return LocalBasis(info, solutions, slots, terms, list(solutions))


def _numeric_solve(op: DiffOperator, info: SingularPointInfo, form: ThetaForm, classes: list, terms: int,
                   points: Optional[Sequence[SingularPointInfo]]) -> list:
    dps = mp.mp.dps
    extra = growth_digits(op, info, terms, points)
    if extra > MAX_GROWTH_DIGITS:
        raise QualityError("Series recurrence needs too many guard digits",
                           {"point": info.name, "terms": terms, "digits": extra})
    with mp.workdps(dps + extra + DEFAULT_GUARD_DIGITS):
        polys = _numeric_form(form)
        raw = [(cls, slot, c) for cls in classes for slot, c in solve_class(polys, cls, terms, False)]
    with mp.workdps(dps + DEFAULT_GUARD_DIGITS):
        raw = [(cls, slot, [[+v for v in row] for row in c]) for cls, slot, c in raw]
    logger.debug(f"Numeric recurrence at {info.name}: {extra} guard digits for N={terms}")
    if form.exact:
        _check_against_exact(form, classes, raw, min(terms, BASIS_CHECK_TERMS), info.name)
    return raw


def _check_against_exact(form: ThetaForm, classes: list, raw: list, depth: int, where: str) -> None:
    exact = [c for cls in classes for _, c in solve_class(form.polys, cls, depth, True)]
    worst = mp.mpf(0)
    for ref, (_, _, c) in zip(exact, raw):
        for n in range(depth):
            for k, v in enumerate(ref[n]):
                a = fraction_to_mpf(v)
                worst = max(worst, abs(c[n][k] - a) / max(1, abs(a)))
    limit = tolerance(mp.mp.dps // 2)
    if worst > limit:
        raise ResidualError(f"numeric basis at {where}", mp.nstr(worst, 5), mp.nstr(limit, 5))


def eval_logseries(s: LogSeries, x: Any, radius: Any = None, lnx: Any = None) -> tuple:
    """
    Evaluate sum_k log(x)^k x^rho (partial sums)

    Args:
        s: Series
        x: Local variable value, inside the disk of convergence
        radius: Disk radius; outside it SeriesDomainError is raised
        lnx: Precomputed log_branch(x)

    Returns:
        (value, tail estimate from the geometric ratio of the last terms)
    """
    x = mp.mpmathify(x)
    ax = abs(x)
    if radius is not None and ax >= radius:
        raise SeriesDomainError("Evaluation point outside the disk of convergence",
                                mp.nstr(ax, 15), mp.nstr(radius, 15))
    if lnx is None and s.max_log > 0:
        lnx = log_branch(x)
    total = mp.mpf(0)
    tail = mp.mpf(0)
    for b in s.blocks:
        xr = power_branch(x, b.rho) if b.rho != 0 else mp.mpf(1)
        lp = mp.mpf(1)
        for k, row in enumerate(b.coeffs):
            acc = mp.mpf(0)
            for c in reversed(row):
                acc = acc * x + (to_num(c) if c else 0)
            total += lp * xr * acc
            tail += abs(lp * xr) * _tail_estimate(row, ax)
            if lnx is not None:
                lp *= lnx
    return total, tail


def _tail_estimate(row: Sequence[Any], ax: Any) -> Any:
    n = len(row)
    if n <= TAIL_TERMS or ax == 0:
        return mp.mpf(0)
    last = abs(to_num(row[-1])) * ax ** (n - 1)
    first = abs(to_num(row[-1 - TAIL_TERMS])) * ax ** (n - 1 - TAIL_TERMS)
    if last == 0:
        return mp.mpf(0)
    if first == 0:
        return last
    q = (last / first) ** (mp.mpf(1) / TAIL_TERMS)
    if q >= 1:
        raise SeriesDomainError("Series tail does not converge at this point", mp.nstr(ax, 15))
    return last * q / (1 - q)


# Pins

PIN_LOCALS = {
    "ln": sympy.log,
    "log": sympy.log,
    "sqrt": sympy.sqrt,
    "pi": sympy.pi,
    "I": sympy.I,
}


def pin_value(text: Any, ws: Any = None) -> Any:
    """
    Evaluate a pin value expression

    Rational results stay exact; anything else is evaluated at the working
    precision. The symbol ``ws`` is bound to the point's closed form.
    """
    if isinstance(text, (int, Fraction)):
        return to_fraction(text)
    local = dict(PIN_LOCALS)
    if ws is not None:
        local["ws"] = ws
    try:
        expr = sympy.sympify(str(text), locals=local)
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise PinError(f"Cannot parse pin value '{text}': {e}")
    if expr.free_symbols:
        raise PinError(f"Pin value '{text}' has free symbols", {"symbols": str(expr.free_symbols)})
    if expr.is_rational:
        return Fraction(int(expr.p), int(expr.q))
    re_part, im_part = expr.as_real_imag()
    digits = mp.mp.dps + 5
    re_v = mp.mpf(str(sympy.N(re_part, digits)))
    im_v = mp.mpf(str(sympy.N(im_part, digits)))
    return re_v if im_v == 0 else mp.mpc(re_v, im_v)


@dataclass
class PinElement:
    """
    One pinned basis element

    Either ``constraints`` (log power k, exponent e, plain coefficient
    value) at free slots, unspecified slots being 0, or ``source``: a
    (operator label, 1-based index, scale) reference to a solution of a
    right factor at the same point.
    """

    constraints: list = field(default_factory=list)
    source: Optional[tuple] = None


@dataclass
class BasisPin:
    """
    Change from the canonical basis to a target basis

    ``chain`` is an optional (base, c, a1, a2) log-argument shift applied
    after the constraints, with a 1-based base index:
    S[b+1] += (a1 - ln c) S[b] and
    S[b+2] += 2 (a1 - ln c) S[b+1] + (ln(c)^2 - 2 a1 ln c + a2) S[b].
    """

    elements: list
    chain: Optional[tuple] = None
    point: str = ""
    operator: str = ""

    @classmethod
    def identity(cls, basis: LocalBasis) -> "BasisPin":
        elements = [PinElement([(k, e, Fraction(1, factorial(k)))]) for e, k in basis.slots]
        return cls(elements, None, basis.point)

    @classmethod
    def from_dict(cls, data: dict) -> "BasisPin":
        """Build a pin from its JSON form."""
        elements = []
        for item in data.get("elements", []):
            src = item.get("source")
            if src is not None:
                elements.append(PinElement([], (src["operator"], int(src["index"]), src.get("scale", "1"))))
            else:
                cons = [(int(c["k"]), to_fraction(str(c["e"])), c["value"]) for c in item.get("constraints", [])]
                elements.append(PinElement(cons))
        chain = None
        if "chain" in data and data["chain"]:
            ch = data["chain"]
            chain = (int(ch["base"]), ch["c"], ch["a1"], ch.get("a2"))
        return cls(elements, chain, str(data.get("point", "")), str(data.get("operator", "")))

    def sources(self) -> set:
        return {el.source[0] for el in self.elements if el.source is not None}


def apply_pin(basis: LocalBasis, pin: BasisPin, sources: Optional[dict] = None) -> LocalBasis:
    """
    Re-express a canonical basis in a pinned target basis

    Args:
        basis: Canonical LocalBasis
        pin: Target description
        sources: Pinned bases of right factors at the same point, by label

    Returns:
        New LocalBasis; ``pin_matrix`` row i holds the canonical
        coordinates of element i

    Raises:
        PinError: inconsistent or rank-deficient pin
    """
    order = basis.order
    if len(pin.elements) != order:
        raise PinError("Pin must describe every basis element",
                       {"elements": len(pin.elements), "order": order})
    ws = basis.info.location.closed_form if basis.info.location is not None else None
    slot_index = {(e, k): i for i, (e, k) in enumerate(basis.slots)}
    rows = []
    for i, el in enumerate(pin.elements):
        if el.source is not None:
            label, index, scale = el.source
            if not sources or label not in sources:
                raise PinError(f"Missing source basis {label}", {"element": i + 1})
            src = sources[label]
            if not 1 <= index <= src.order:
                raise PinError(f"Source index {index} out of range", {"element": i + 1})
            s = pin_value(scale, ws)
            coords = basis.coordinates(src.solutions[index - 1])
            rows.append([v * s if _is_exact(v) and _is_exact(s) else to_num(v) * to_num(s) for v in coords])
            continue
        row: list = [Fraction(0)] * order
        for k, e, value in el.constraints:
            idx = slot_index.get((e, k))
            if idx is None:
                raise PinError("Constraint is not at a free slot",
                               {"element": i + 1, "k": k, "e": fraction_str(e)})
            row[idx] = pin_value(value, ws) * factorial(k)
        rows.append(row)
    if pin.chain is not None:
        base, c, a1, a2 = pin.chain
        b = base - 1
        if not 0 <= b < order - 1:
            raise PinError("Chain base out of range", {"base": base})
        lc = log_branch(to_num(pin_value(c, ws)))
        a1v = to_num(pin_value(a1, ws))
        delta = a1v - lc
        old_next = [to_num(v) for v in rows[b + 1]]
        rows[b + 1] = [to_num(v) + delta * to_num(u) for v, u in zip(rows[b + 1], rows[b])]
        if a2 is not None and b + 2 < order:
            a2v = to_num(pin_value(a2, ws))
            w2 = lc ** 2 - 2 * a1v * lc + a2v
            rows[b + 2] = [to_num(v) + 2 * delta * o + w2 * to_num(u)
                           for v, o, u in zip(rows[b + 2], old_next, rows[b])]
    exact = all(_is_exact(v) for row in rows for v in row)
    if exact:
        det = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in rows]).det()
        singular = det == 0
    else:
        rows = [[to_num(v) for v in row] for row in rows]
        m = mp.matrix(rows)
        singular = abs(mp.det(m)) <= tolerance(mp.mp.dps // 2) * max(1, mp.mnorm(m, 1)) ** order
    if singular:
        raise PinError("Pin does not determine an invertible change of basis", {"point": basis.point})
    canonical = basis.canonical or basis.solutions
    solutions = []
    for i, row in enumerate(rows):
        s = combine([(v, canonical[j]) for j, v in enumerate(row) if v != 0] or [(0, canonical[0])],
                    f"S{i + 1}")
        solutions.append(s)
    logger.debug(f"Pinned basis at {basis.point} ({'exact' if exact else 'numeric'})")
    return LocalBasis(basis.info, solutions, basis.slots, basis.terms, canonical, rows, pin, basis.radius)
