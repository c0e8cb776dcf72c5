#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# exceptions.py
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
Custom Exceptions for FuchsMatch

This module defines a hierarchy of custom exceptions for consistent
error handling throughout the FuchsMatch library and command line tool.
"""

import logging
from typing import Optional, Any


class FuchsError(Exception):
    """
    Base exception for all FuchsMatch errors

    All custom exceptions in FuchsMatch should inherit from this class.
    """

    def __init__(self, message: str, context: Optional[dict[str, Any]] = None) -> None:
        """
        Initialize the exception

        Args:
            message: Error message
            context: Optional context dictionary with additional information
        """
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def __str__(self) -> str:
        """Return formatted error message with context"""
        if self.context:
            context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            return f"{self.message} ({context_str})"
        return self.message


# Parse Errors

class ParseError(FuchsError):
    """Base exception for all input parsing errors"""
    pass


class PolySyntaxError(ParseError):
    """Syntax error inside a polynomial or operator expression"""

    def __init__(self, message: str, offset: int, text: Optional[str] = None) -> None:
        """
        Initialize polynomial syntax error

        Args:
            message: Error message
            offset: Byte offset of the offending character
            text: The expression that failed to parse
        """
        context: dict[str, Any] = {"offset": offset}
        if text is not None:
            context["text"] = text if len(text) <= 60 else text[:57] + "..."
        super().__init__(message, context)
        self.offset = offset
        self.text = text


class UnknownSymbolError(ParseError):
    """Expression uses a symbol other than the declared variable"""

    def __init__(self, symbol: str, offset: int, variable: str = "w") -> None:
        message = f"Unknown symbol '{symbol}' (expected '{variable}')"
        super().__init__(message, {"offset": offset, "symbol": symbol})
        self.symbol = symbol
        self.offset = offset


class OperatorFileError(ParseError):
    """Malformed operator or fixture file"""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None) -> None:
        context: dict[str, Any] = {}
        if path:
            context["path"] = path
        if line is not None:
            context["line"] = line
        super().__init__(message, context)
        self.path = path
        self.line = line


# Kernel Errors

class KernelError(FuchsError):
    """Base exception for numeric kernel errors"""
    pass


class ZeroArgumentError(KernelError):
    """Logarithm or power of zero requested"""
    pass


class DivergenceError(KernelError):
    """Series evaluated outside its disk of convergence"""

    def __init__(self, message: str, abs_x: Any = None) -> None:
        super().__init__(message, {"abs_x": abs_x} if abs_x is not None else {})
        self.abs_x = abs_x


# Operator Errors

class OperatorError(FuchsError):
    """Base exception for differential operator errors"""
    pass


class NonFuchsianError(OperatorError):
    """Point is not a regular singular point of the operator"""

    def __init__(self, point: str, pole_order: int, order: int) -> None:
        """
        Initialize non-Fuchsian error

        Args:
            point: Location of the offending point
            pole_order: Worst pole order found after normalisation
            order: Order of the operator
        """
        message = f"Operator is not Fuchsian at {point}"
        super().__init__(message, {"point": point, "pole_order": pole_order, "order": order})
        self.point = point
        self.pole_order = pole_order
        self.order = order


class VariableMismatchError(OperatorError):
    """Operators written in different variables"""

    def __init__(self, left: str, right: str) -> None:
        super().__init__("Operators use different variables", {"left": left, "right": right})
        self.left = left
        self.right = right


# Frobenius Errors

class FrobeniusError(FuchsError):
    """Base exception for local basis construction errors"""
    pass


class InsufficientTermsError(FrobeniusError):
    """Requested truncation is too short for the exponent structure"""

    def __init__(self, terms: int, required: int) -> None:
        message = f"Need more than {required} terms, got {terms}"
        super().__init__(message, {"terms": terms, "required": required})
        self.terms = terms
        self.required = required


class PinError(FrobeniusError):
    """Inconsistent or rank-deficient basis pin"""
    pass


class SeriesDomainError(FrobeniusError):
    """Evaluation point outside the disk of convergence"""

    def __init__(self, message: str, abs_x: Any = None, radius: Any = None) -> None:
        context: dict[str, Any] = {}
        if abs_x is not None:
            context["abs_x"] = abs_x
        if radius is not None:
            context["radius"] = radius
        super().__init__(message, context)


# Matching Errors

class MatchingError(FuchsError):
    """Base exception for connection matrix errors"""
    pass


class IllConditionedError(MatchingError):
    """Matching system too ill-conditioned at the working precision"""

    def __init__(self, condition: Any, limit: Any) -> None:
        super().__init__("Matching system is ill-conditioned",
                         {"condition": condition, "limit": limit})
        self.condition = condition
        self.limit = limit


class DiskOverlapError(MatchingError):
    """Convergence disks of the two points do not overlap"""
    pass


class PathMismatchError(MatchingError):
    """Consecutive connection matrices do not share an endpoint"""

    def __init__(self, left: str, right: str) -> None:
        super().__init__("Connection path endpoints do not match", {"left": left, "right": right})
        self.left = left
        self.right = right


# Recognition Errors

class RecognitionError(FuchsError):
    """Base exception for constant recognition errors"""
    pass


class InsufficientPrecisionError(RecognitionError):
    """Value is not known to enough digits to attempt recognition"""

    def __init__(self, digits: int, required: int) -> None:
        super().__init__("Not enough digits to recognize value",
                         {"digits": digits, "required": required})
        self.digits = digits
        self.required = required


# Asymptotics Errors

class AsymptoticsError(FuchsError):
    """Coefficient asymptotics cannot be formed or compared"""
    pass


# Quality Errors

class QualityError(FuchsError):
    """Base exception for numerical quality failures"""
    pass


class ResidualError(QualityError):
    """Residual above the configured tolerance"""

    def __init__(self, what: str, residual: Any, tolerance: Any) -> None:
        message = f"Residual of {what} above tolerance"
        super().__init__(message, {"residual": residual, "tolerance": tolerance})
        self.what = what
        self.residual = residual
        self.tolerance = tolerance


# Usage Errors

class UsageError(FuchsError):
    """Base exception for command line usage errors"""
    pass


class UnknownFixtureError(UsageError):
    """Fixture name does not resolve to shipped data"""

    def __init__(self, name: str) -> None:
        super().__init__(f"Unknown fixture: {name}", {"fixture": name})
        self.name = name


class FixtureDataError(UsageError):
    """Fixture data is missing or malformed"""
    pass


class ConfigValueError(UsageError):
    """Invalid run configuration value"""

    def __init__(self, message: str, key: Optional[str] = None, value: Optional[Any] = None) -> None:
        """
        Initialize invalid config value error

        Args:
            message: Error message
            key: Configuration key
            value: Invalid value
        """
        context = {}
        if key:
            context["key"] = key
        if value is not None:
            context["value"] = value
        super().__init__(message, context)
        self.key = key
        self.value = value


def log_exception(logger: logging.Logger, exception: Exception, context: Optional[dict[str, Any]] = None,
                  use_exc_info: bool = True) -> None:
    """
    Log an exception consistently

    Args:
        logger: Logger instance to use
        exception: Exception to log
        context: Optional additional context dictionary
        use_exc_info: Whether to include exception traceback (default: True)
                     Set to False for expected input errors
    """
    message = str(exception)
    if context:
        context_str = ", ".join(f"{k}={v}" for k, v in context.items())
        message = f"{message} (context: {context_str})"

    # Input and quality problems are expected outcomes, not crashes
    if isinstance(exception, (ParseError, UsageError, QualityError, PinError)):
        use_exc_info = False

    if use_exc_info:
        logger.error(message, exc_info=True)
    else:
        logger.error(message)
