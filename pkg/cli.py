#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# cli.py
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
Command Line Interface for FuchsMatch

Subcommands analyze, basis, connect, monodromy, recognize, decompose,
asymptotics, opmul and verify. Results go to stdout as JSON (or CSV for
asymptotic tables), logging goes to stderr.

Exit codes: 0 on success, 2 when a residual is above the quality
tolerance or a numerical step fails, 1 on usage and input errors.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Optional

import mpmath as mp
import sympy

from asymptotics import chi3_expansion, chi3_limit, compare, leading_limit, model_from_singular
from connect import path_consistency
from defaults import (DEFAULT_ASYMPTOTIC_N, DEFAULT_ASYMPTOTIC_SERIES_TERMS, DEFAULT_LOOP_ORIENTATION,
                      DEFAULT_MAX_HEIGHT, MAX_RECOGNITION_PRECISION, MIN_PRECISION, MIN_TERMS_PER_ORDER,
                      PROFILES, env_precision, env_terms, get_profile, quality_digits)
from diffop import load_operator, op_mul, verify_factor
from event_logger import PipelineEventLogger
from exceptions import (ConfigValueError, FuchsError, InsufficientPrecisionError, KernelError, MatchingError,
                        QualityError, ResidualError, UsageError, log_exception)
from fixtures_loader import Fixture, fixture_names, load_fixture
from logging_config import effective_log_level, set_command_line_log_level, set_log_level, set_module_levels
from monodromy import global_monodromy, jordan_blocks, local_monodromy, product_identity
from mpkernel import tolerance
from physical import cancellation_test, decompose_at, physical_series, singular_part
from recognize import RecognitionBasis, constant_from_file, format_relation, recognize_matrix, recognize_value
from result_exporter import ResultExporter, number_text
from utils import parse_int_list, parse_path, parse_point_name, working_precision
from version import versionString

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_QUALITY = 2


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as UsageError (exit code 1)."""

    def error(self, message: str) -> None:
        raise UsageError(message)


@dataclass
class RunConfig:
    """Resolved precision, series length and operator source of one run."""

    precision: int
    terms: int
    digits: int
    fixture: Optional[Fixture]
    label: Optional[str]
    orientation: str = DEFAULT_LOOP_ORIENTATION

    @property
    def tolerance(self) -> Any:
        return tolerance(quality_digits(self.precision))


def resolve_config(args: argparse.Namespace, need_operator: bool = True) -> RunConfig:
    """
    Precision and terms from --profile, the flags or the environment

    Flags override the profile, the profile overrides FUCHS_PRECISION
    and FUCHS_TERMS.

    Raises:
        ConfigValueError: precision or terms out of range
        UsageError: both of --fixture and --op given, or neither when the
            command needs an operator
    """
    precision, terms = get_profile(args.profile) if args.profile else (env_precision(), env_terms())
    if args.prec is not None:
        precision = args.prec
    if args.terms is not None:
        terms = args.terms
    if precision < MIN_PRECISION:
        raise ConfigValueError(f"Precision must be at least {MIN_PRECISION}", key="prec", value=precision)
    if args.fixture and args.op:
        raise UsageError("Give either --fixture or --op, not both")
    if args.op:
        fixture = Fixture.from_operator_file(args.op)
    elif args.fixture:
        fixture = load_fixture(args.fixture)
    elif not need_operator:
        return RunConfig(precision, terms, args.digits, None, None, args.orientation)
    else:
        raise UsageError("An operator is required (--fixture NAME or --op FILE)",
                         {"fixtures": ",".join(fixture_names())})
    label = args.operator or fixture.main
    return RunConfig(precision, terms, args.digits, fixture, label, args.orientation)


def _check_terms(config: RunConfig, order: int) -> None:
    if config.terms < MIN_TERMS_PER_ORDER * order:
        raise ConfigValueError(f"Need at least {MIN_TERMS_PER_ORDER} terms per unit of order",
                               key="terms", value=config.terms)


def _emit(doc: Any) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _exporter(config: RunConfig) -> ResultExporter:
    return ResultExporter(config.digits, config.precision, config.terms)


def _passes(events: PipelineEventLogger, what: str, residual: Any, config: RunConfig) -> bool:
    if residual is None or residual <= config.tolerance:
        return True
    events.log_quality_warning(f"{what} residual above tolerance {mp.nstr(config.tolerance, 3)}", residual)
    return False


def _require(events: PipelineEventLogger, what: str, residual: Any, config: RunConfig) -> None:
    """
    Raises:
        ResidualError: residual above the run tolerance
    """
    if not _passes(events, what, residual, config):
        raise ResidualError(what, residual, config.tolerance)


def _trusted_digits(residual: Any, config: RunConfig) -> int:
    """Digits of a matrix entry that recognition may rely on."""
    if residual is None or residual == 0:
        return config.precision
    return max(1, min(config.precision, int(-mp.log10(residual))))


def _recognition_basis(args: argparse.Namespace) -> RecognitionBasis:
    """
    Basis from --basis plus every --add NAME=FILE

    Raises:
        UsageError: an --add item is not of the form NAME=FILE
    """
    if args.basis == "default":
        basis = RecognitionBasis.default(max_height=args.max_height)
    else:
        basis = RecognitionBasis.from_names([n.strip() for n in args.basis.split(",")], max_height=args.max_height)
    for item in args.add or []:
        name, sep, path = item.partition("=")
        if not sep or not name.strip() or not path.strip():
            raise UsageError("--add takes NAME=FILE", {"add": item})
        basis.add(name.strip(), constant_from_file(path.strip()))
    return basis


def _recognition_config(config: RunConfig, basis: RecognitionBasis) -> RunConfig:
    """
    Run settings for a command that recognizes matrix entries

    Precision is raised to twice the digits the whole basis needs, terms
    in proportion, up to MAX_RECOGNITION_PRECISION.
    """
    wanted = min(MAX_RECOGNITION_PRECISION, 2 * basis.required_digits())
    if wanted <= config.precision:
        return config
    terms = -(-config.terms * wanted // config.precision)
    logger.info(f"Recognition raises the precision to {wanted} digits, {terms} terms")
    return replace(config, precision=wanted, terms=terms)


# Commands

def cmd_analyze(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    fx = config.fixture
    op = fx.operator(config.label)
    events.log_operator_loaded(config.label, op.order, "fixture" if fx.descriptor.get("points") else "file")
    names = [n for n in fx.point_names if not fx.is_ordinary(n)]
    infos = [fx.point_info(n, config.label) for n in names]
    exporter = _exporter(config)
    _emit(exporter.envelope("analyze", {
        "operator": config.label,
        "order": op.order,
        "points": [exporter.point(i) for i in infos],
    }))
    return EXIT_OK


def cmd_basis(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    fx = config.fixture
    _check_terms(config, fx.operator(config.label).order)
    name = parse_point_name(args.at)
    basis = fx.basis(name, config.terms, config.label, pinned=not args.canonical)
    exact = all(s.exact for s in basis.solutions)
    events.log_basis_built(name, basis.order, config.terms, exact)
    if basis.pin is not None:
        events.log_pin_applied(config.label, name)
    exporter = _exporter(config)
    _emit(exporter.envelope("basis", {
        "point": exporter.point(basis.info),
        "pinned": basis.pin is not None,
        "radius": number_text(basis.radius, 10) if basis.radius is not None else None,
        "elements": [exporter.series(s, args.show) for s in basis.solutions],
    }))
    return EXIT_OK


def cmd_connect(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    fx = config.fixture
    _check_terms(config, fx.operator().order)
    target = parse_point_name(args.to)
    source = parse_point_name(getattr(args, "from")) if getattr(args, "from") else fx.base_point
    route = parse_path(args.path) if args.path else None
    if route is None and source != fx.base_point:
        route = [source, target]
    if route is not None and (route[0] != source or route[-1] != target):
        raise UsageError("Path must start at --from and end at --to", {"path": ",".join(route)})
    basis = _recognition_basis(args) if args.recognize else None
    run = _recognition_config(config, basis) if basis else config
    with working_precision(run.precision):
        conn = fx.connection(target, run.terms, path=route)
        route_taken = conn.provenance.get("path", [])
        if len(route_taken) > 2:
            events.log_path_composed(route_taken, conn.residual)
        events.log_connection(conn.from_pt, conn.to_pt, conn.residual)
        recognition = recognize_matrix(conn.entries, basis, _trusted_digits(conn.residual, run)) if basis else None
        exporter = _exporter(run)
        _emit(exporter.envelope("connect", {"connection": exporter.connection(conn, recognition)}))
    _require(events, f"C({conn.from_pt},{conn.to_pt})", conn.residual, run)
    return EXIT_OK


def _monodromy_matrices(config: RunConfig, order: list, events: PipelineEventLogger) -> list:
    fx = config.fixture
    mats = []
    for name in order:
        local = local_monodromy(fx.basis(name, config.terms), config.orientation)
        m = global_monodromy(fx.connection(name, config.terms), local)
        events.log_monodromy(m.base_point, m.around, m.det())
        mats.append(m)
    return mats


def _jordan_structure(m: Any, info: Any, config: RunConfig) -> list:
    """Jordan block sizes for each eigenvalue exp(2 pi i rho) over the exponents rho at the point."""
    out = []
    for r in sorted({e % 1 for e in info.exponents}):
        eigenvalue = mp.expjpi(2 * mp.mpf(r.numerator) / r.denominator)
        out.append({"exponent_mod_1": str(r), "blocks": jordan_blocks(m, eigenvalue, quality_digits(config.precision))})
    return out


def cmd_monodromy(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    fx = config.fixture
    _check_terms(config, fx.operator().order)
    if args.base and parse_point_name(args.base) != fx.base_point:
        raise UsageError(f"Monodromy is computed in the basis at {fx.base_point}", {"base": args.base})
    if args.around:
        order = [parse_point_name(args.around)]
    elif args.order:
        order = parse_path(args.order)
    else:
        order = fx.monodromy_order or [n for n in fx.point_names
                                       if not fx.is_ordinary(n) and not fx.point_info(n).apparent]
    basis = _recognition_basis(args) if args.recognize else None
    run = _recognition_config(config, basis) if basis else config
    with working_precision(run.precision):
        mats = _monodromy_matrices(run, order, events)
        residual = None if args.around else product_identity(mats)
        exporter = _exporter(run)
        matrices = []
        for m in mats:
            doc = exporter.monodromy(m, recognize_matrix(m.entries, basis, run.precision // 2) if basis else None)
            doc["jordan"] = _jordan_structure(m, fx.point_info(m.around), run)
            matrices.append(doc)
        payload = {
            "base": fx.base_point,
            "order": [m.around for m in mats],
            "matrices": matrices,
            "product_residual": number_text(residual, 5) if residual is not None else None,
        }
        _emit(exporter.envelope("monodromy", payload))
    _require(events, "Monodromy product", residual, run)
    return EXIT_OK


def cmd_recognize(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    try:
        value = mp.mpf(args.value)
        if args.imag:
            value = mp.mpc(value, mp.mpf(args.imag))
    except ValueError:
        raise ConfigValueError("Value must be a decimal number", key="value", value=args.value)
    trusted = sum(ch.isdigit() for ch in args.value.split("e")[0].split("E")[0])
    digits = min(trusted, config.precision) if args.digits_known is None else args.digits_known
    form = recognize_value(value, _recognition_basis(args), digits)
    text = format_relation(form)
    if form is not None:
        events.log_recognized(args.value[:20], text, form.verified_digits)
    _emit(_exporter(config).envelope("recognize", {
        "value": number_text(value, config.digits),
        "form": text,
        "height": form.height if form else None,
        "verified_digits": form.verified_digits if form else None,
    }))
    return EXIT_OK


def _weights(fx: Fixture, args: argparse.Namespace) -> list:
    raw = args.weights.split(",") if getattr(args, "weights", None) else (fx.physical or {}).get("weights")
    if raw is None:
        raise UsageError("No weights: give --weights or use a fixture with a designated solution")
    try:
        return [Fraction(w.strip()) for w in raw]
    except ValueError:
        raise ConfigValueError("Weights must be exact rationals", key="weights", value=",".join(raw))


def _rational(fx: Fixture) -> Optional[Any]:
    text = (fx.physical or {}).get("rational")
    return sympy.sympify(text) if text else None


def cmd_decompose(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    fx = config.fixture
    _check_terms(config, fx.operator().order)
    name = parse_point_name(args.at)
    conn = fx.connection(name, config.terms)
    basis = fx.basis(name, config.terms)
    d = decompose_at(_weights(fx, args), conn, basis, _rational(fx))
    terms = singular_part(d, args.series_terms, quality_digits(config.precision))
    cancellation = cancellation_test(d)
    exporter = _exporter(config)
    payload = exporter.decomposition(d, terms)
    payload["log_cancellation"] = number_text(cancellation, 5)
    payload["connection_residual"] = number_text(conn.residual, 5)
    _emit(exporter.envelope("decompose", payload))
    _require(events, f"C({conn.from_pt},{conn.to_pt})", conn.residual, config)
    return EXIT_OK


def cmd_asymptotics(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    fx = config.fixture
    phys = fx.physical
    if phys is None:
        raise UsageError(f"Fixture {fx.name} has no designated solution")
    _check_terms(config, fx.operator().order)
    n_list = parse_int_list(args.n) if args.n else list(DEFAULT_ASYMPTOTIC_N)
    shift = int(phys.get("shift", 0))
    divisor = Fraction(str(phys.get("divisor", 1)))
    weights = _weights(fx, args)
    rational = _rational(fx)
    length = max(n_list) + shift + 1
    base = fx.basis(fx.base_point, max(length, config.terms))
    series = physical_series(base, weights, length, rational)
    parts = {}
    residual = mp.mpf(0)
    for name in phys.get("dominant", []):
        conn = fx.connection(name, config.terms)
        residual = max(residual, conn.residual)
        d = decompose_at(weights, conn, fx.basis(name, config.terms), rational)
        parts[fx.point_info(name).value()] = singular_part(d, args.series_terms, quality_digits(config.precision))
    model = model_from_singular(parts, shift, mp.mpf(divisor.numerator) / divisor.denominator, fx.name)
    rows = compare(series, model, n_list)
    if args.format == "csv":
        sys.stdout.write(_exporter(config).comparison_csv(rows))
    else:
        exporter = _exporter(config)
        payload = {"rows": exporter.comparison(rows), "limit": number_text(leading_limit(model), config.digits)}
        if phys.get("expansion") == "chi3":
            payload["expansion"] = [{"n": n, "value": number_text(chi3_expansion(n), 20)} for n in n_list]
            payload["expected_limit"] = number_text(chi3_limit(), config.digits)
        _emit(exporter.envelope("asymptotics", payload))
    _require(events, "Dominant connections", residual, config)
    return EXIT_OK


def cmd_opmul(args: argparse.Namespace, config: Optional[RunConfig], events: PipelineEventLogger) -> int:
    left = load_operator(args.left)
    right = load_operator(args.right)
    events.log_operator_loaded(os.path.basename(args.left), left.order)
    events.log_operator_loaded(os.path.basename(args.right), right.order)
    product = op_mul(left, right, monic=args.monic)
    text = product.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Product of order {product.order} written to {args.output}")
    _emit({
        "program": "FuchsMatch",
        "version": versionString,
        "command": "opmul",
        "order": product.order,
        "operator": None if args.output else text,
        "output": args.output,
    })
    return EXIT_OK


def _factor_checks(fx: Fixture) -> list:
    """verify_factor for every operator whose factor list ends in another one's."""
    specs = fx.descriptor.get("operators", {})
    files = {k: v.get("compose", [v.get("file")]) for k, v in specs.items()}
    out = []
    for big, big_files in files.items():
        for small, small_files in files.items():
            if big == small or len(small_files) >= len(big_files) or big_files[-len(small_files):] != small_files:
                continue
            ok, _ = verify_factor(fx.operator(big), fx.operator(small))
            out.append({"operator": big, "right_factor": small, "divides": ok})
    return out


def cmd_verify(args: argparse.Namespace, config: RunConfig, events: PipelineEventLogger) -> int:
    fx = config.fixture
    _check_terms(config, fx.operator().order)
    ok = True
    factors = _factor_checks(fx)
    ok &= all(f["divides"] for f in factors)
    connections = []
    for name in fx.paths:
        conn = fx.connection(name, config.terms)
        passed = _passes(events, f"C({conn.from_pt},{conn.to_pt})", conn.residual, config)
        ok &= passed
        connections.append({"to": name, "residual": number_text(conn.residual, 5), "passed": passed})
    alternatives = []
    for name, route in fx.descriptor.get("alternative_paths", {}).items():
        diff = path_consistency(fx.connection(name, config.terms), fx.connection(name, config.terms, path=route),
                                quality_digits(config.precision))
        passed = _passes(events, f"Alternative path to {name}", diff, config)
        ok &= passed
        alternatives.append({"to": name, "path": route, "difference": number_text(diff, 5), "passed": passed})
    residual = None
    if fx.monodromy_order:
        residual = product_identity(_monodromy_matrices(config, fx.monodromy_order, events))
        ok &= _passes(events, "Monodromy product", residual, config)
    _emit(_exporter(config).envelope("verify", {
        "factors": factors,
        "connections": connections,
        "alternative_paths": alternatives,
        "product_residual": number_text(residual, 5) if residual is not None else None,
        "tolerance": number_text(config.tolerance, 3),
        "ok": bool(ok),
    }))
    return EXIT_OK if ok else EXIT_QUALITY


COMMANDS = {
    "analyze": cmd_analyze,
    "basis": cmd_basis,
    "connect": cmd_connect,
    "monodromy": cmd_monodromy,
    "recognize": cmd_recognize,
    "decompose": cmd_decompose,
    "asymptotics": cmd_asymptotics,
    "opmul": cmd_opmul,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command."""
    parser = _ArgumentParser(prog="fuchsmatch", description="FuchsMatch: connection and monodromy "
                                                            "matrices of Fuchsian operators")
    parser.add_argument('-l', '--loglevel',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL', 'NONE'],
                        help='Set log level (overrides FUCHS_LOGLEVEL)')
    parser.add_argument('--version', action='version', version=f"FuchsMatch {versionString}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--prec', type=int, help='Working precision in decimal digits')
    common.add_argument('--terms', type=int, help='Series terms per basis element')
    common.add_argument('--profile', choices=sorted(PROFILES), help='Named (precision, terms) profile')
    common.add_argument('--fixture', help=f'Shipped fixture ({", ".join(fixture_names()) or "none"})')
    common.add_argument('--op', help='Operator file')
    common.add_argument('--operator', help='Operator label inside the fixture (default: its main operator)')
    common.add_argument('--digits', type=int, default=30, help='Digits printed for floating values')
    common.add_argument('--orientation', choices=['ccw', 'cw'], default=DEFAULT_LOOP_ORIENTATION,
                        help='Loop orientation in the local variable')

    recog = argparse.ArgumentParser(add_help=False)
    recog.add_argument('--basis', '--constants', dest='basis', default='default',
                       help='"default" (tiered constant basis) or comma separated basis names')
    recog.add_argument('--add', action='append', metavar='NAME=FILE',
                       help='Extra constant read from FILE, tried first; repeatable')
    recog.add_argument('--max-height', type=int, default=DEFAULT_MAX_HEIGHT, dest='max_height',
                       help='Largest integer coefficient accepted')

    sub = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    sub.add_parser('analyze', parents=[common], help='Singular points with exponents and log structure')

    p = sub.add_parser('basis', parents=[common], help='Local Frobenius basis at a point')
    p.add_argument('--at', required=True, help='Point name')
    p.add_argument('--show', type=int, default=8, help='Coefficients printed per series')
    p.add_argument('--canonical', action='store_true', help='Skip the fixture pin')

    p = sub.add_parser('connect', parents=[common, recog], help='Connection matrix between two points')
    p.add_argument('--from', help='Start point (default: fixture base point)')
    p.add_argument('--to', required=True, help='End point')
    p.add_argument('--path', help='Comma separated route, e.g. 0,1/4,1')
    p.add_argument('--recognize', action='store_true', help='Recognize entries in closed form')

    p = sub.add_parser('monodromy', parents=[common, recog], help='Monodromy matrices at the base point')
    p.add_argument('--base', help='Base point (must be the fixture base point)')
    p.add_argument('--order', help='Comma separated product order')
    p.add_argument('--around', help='Single point')
    p.add_argument('--recognize', action='store_true', help='Recognize entries in closed form')

    p = sub.add_parser('recognize', parents=[common, recog], help='Closed form of a number')
    p.add_argument('--value', required=True, help='Decimal value (real part)')
    p.add_argument('--imag', help='Imaginary part')
    p.add_argument('--digits-known', type=int, dest='digits_known', help='Trusted digits of the value')

    p = sub.add_parser('decompose', parents=[common], help='Designated solution at a point')
    p.add_argument('--at', required=True, help='Point name')
    p.add_argument('--weights', help='Comma separated rational weights on the base basis')
    p.add_argument('--series-terms', type=int, default=DEFAULT_ASYMPTOTIC_SERIES_TERMS, dest='series_terms')

    p = sub.add_parser('asymptotics', parents=[common], help='Predicted versus actual coefficients')
    p.add_argument('--n', help='Comma separated indices (default: 100,200,500)')
    p.add_argument('--weights', help='Comma separated rational weights on the base basis')
    p.add_argument('--series-terms', type=int, default=DEFAULT_ASYMPTOTIC_SERIES_TERMS, dest='series_terms')
    p.add_argument('--format', choices=['json', 'csv'], default='json')

    p = sub.add_parser('opmul', help='Compose two operator files')
    p.add_argument('--left', required=True, help='Left factor file')
    p.add_argument('--right', required=True, help='Right factor file')
    p.add_argument('--monic', action='store_true', help='Compose with the monic normalisation of the right factor')
    p.add_argument('-o', '--output', help='Write the product to this file')

    sub.add_parser('verify', parents=[common], help='Factor, connection, path and product checks')
    return parser


def main(argv: Optional[list] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"fuchsmatch: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    set_command_line_log_level(args.loglevel)
    set_log_level(effective_log_level())

    events = PipelineEventLogger()
    events.log_command_received(args.command, " ".join(argv if argv is not None else sys.argv[1:]))
    try:
        set_module_levels()
        if args.command == "opmul":
            return cmd_opmul(args, None, events)
        config = resolve_config(args, need_operator=args.command != "recognize")
        events.log_system_event("Run started", f"precision {config.precision}, terms {config.terms}")
        with working_precision(config.precision):
            return COMMANDS[args.command](args, config, events)
    except (QualityError, MatchingError, KernelError, InsufficientPrecisionError) as e:
        log_exception(logger, e)
        return EXIT_QUALITY
    except FuchsError as e:
        log_exception(logger, e, use_exc_info=False)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
