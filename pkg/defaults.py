#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# defaults.py
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
Default Values Configuration for FuchsMatch

This module contains all default values used throughout the library.
All default values should be defined here to avoid duplication and improve maintainability.
"""

import os
from typing import Any, Dict, Optional

from exceptions import ConfigValueError

# Precision Settings
DEFAULT_PRECISION: int = 250
DEFAULT_GUARD_DIGITS: int = 10
MIN_PRECISION: int = 50
PRECISION_ENV_VAR: str = "FUCHS_PRECISION"
TERMS_ENV_VAR: str = "FUCHS_TERMS"
LOGLEVEL_ENV_VAR: str = "FUCHS_LOGLEVEL"
LOGMODULES_ENV_VAR: str = "FUCHS_LOGMODULES"

# Series Settings
DEFAULT_TERMS: int = 600
DEFAULT_EXACT_TERMS: int = 400
MIN_TERMS_PER_ORDER: int = 10
TAIL_TERMS: int = 10
LOG_DEPTH_MARGIN: int = 1
MAX_GROWTH_DIGITS: int = 20000
BASIS_CHECK_TERMS: int = 40

# Matching Settings
DEFAULT_K_VALIDATE: int = 3
MATCH_ARC_STEP: float = 1e-2
MATCH_HALF_PLANE_OFFSET: float = 1e-3

# Recognition Settings
DEFAULT_MAX_HEIGHT: int = 10**6
DEFAULT_VERIFY_FACTOR: float = 1.5
RECOGNITION_BASIS_NAMES: tuple = (
    "1", "pi", "pi^2", "1/pi", "1/pi^2", "sqrt3", "sqrt3/pi", "sqrt3*pi",
    "pi^3", "1/pi^3", "ln2", "ln2^2", "ln3", "sqrt7",
    "gamma", "catalan", "zeta3", "cl2(pi/3)",
)
# nested prefixes of the default basis tried before the whole of it
RECOGNITION_TIERS: tuple = (8, 14)
# precision ceiling when --recognize raises the working precision
MAX_RECOGNITION_PRECISION: int = 1200

# Monodromy Settings
DEFAULT_LOOP_ORIENTATION: str = "ccw"
CHI3_MONODROMY_ORDER: tuple = ("inf", "1", "1/4", "w1", "-1/2", "-1/4", "0", "w2")

# Asymptotics Settings
DEFAULT_ASYMPTOTIC_N: tuple = (100, 200, 500)
DEFAULT_ASYMPTOTIC_SERIES_TERMS: int = 6

# Quality Settings
# residuals pass below 10^(-precision // QUALITY_DIGITS_DIVISOR)
QUALITY_DIGITS_DIVISOR: int = 4
PATH_AGREEMENT_DIVISOR: int = 4

# Run profiles: (precision, terms)
PROFILES: Dict[str, tuple] = {
    "quick": (60, 160),
    "desk": (DEFAULT_PRECISION, DEFAULT_TERMS),
    "full": (800, 1500),
}


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ConfigValueError(f"Environment variable {name} must be an integer", key=name, value=raw)


def env_precision() -> int:
    """
    Get the default precision, honouring FUCHS_PRECISION

    Returns:
        Precision in decimal digits
    """
    return _env_int(PRECISION_ENV_VAR, DEFAULT_PRECISION)


def env_terms() -> int:
    """Get the default series length, honouring FUCHS_TERMS"""
    return _env_int(TERMS_ENV_VAR, DEFAULT_TERMS)


def get_profile(name: str) -> tuple:
    """
    Get (precision, terms) for a named run profile

    Args:
        name: Profile name ("quick", "desk", "full")

    Returns:
        Tuple (precision, terms)
    """
    if name not in PROFILES:
        raise ConfigValueError(f"Unknown profile: {name}", key="profile", value=name)
    return PROFILES[name]


def get_default(group: str, key: str, default: Optional[Any] = None) -> Any:
    """
    Get default value for a settings group and key

    Args:
        group: Settings group name (e.g., "Precision", "Matching")
        key: Setting key name
        default: Fallback value if no default is defined

    Returns:
        Default value for the setting
    """
    if group == "Precision":
        defaults = {
            "precision": DEFAULT_PRECISION,
            "guard": DEFAULT_GUARD_DIGITS,
            "minPrecision": MIN_PRECISION,
        }
        return defaults.get(key, default)

    if group == "Series":
        defaults = {
            "terms": DEFAULT_TERMS,
            "exactTerms": DEFAULT_EXACT_TERMS,
            "tailTerms": TAIL_TERMS,
            "logDepthMargin": LOG_DEPTH_MARGIN,
            "maxGrowthDigits": MAX_GROWTH_DIGITS,
            "checkTerms": BASIS_CHECK_TERMS,
        }
        return defaults.get(key, default)

    if group == "Matching":
        defaults = {
            "kValidate": DEFAULT_K_VALIDATE,
            "arcStep": MATCH_ARC_STEP,
            "halfPlaneOffset": MATCH_HALF_PLANE_OFFSET,
        }
        return defaults.get(key, default)

    if group == "Recognition":
        defaults = {
            "maxHeight": DEFAULT_MAX_HEIGHT,
            "verifyFactor": DEFAULT_VERIFY_FACTOR,
            "basis": RECOGNITION_BASIS_NAMES,
            "tiers": RECOGNITION_TIERS,
            "maxPrecision": MAX_RECOGNITION_PRECISION,
        }
        return defaults.get(key, default)

    if group == "Monodromy":
        defaults = {
            "orientation": DEFAULT_LOOP_ORIENTATION,
            "order": CHI3_MONODROMY_ORDER,
        }
        return defaults.get(key, default)

    if group == "Quality":
        defaults = {
            "digitsDivisor": QUALITY_DIGITS_DIVISOR,
            "pathDivisor": PATH_AGREEMENT_DIVISOR,
        }
        return defaults.get(key, default)

    if group == "Asymptotics":
        defaults = {
            "n": DEFAULT_ASYMPTOTIC_N,
            "seriesTerms": DEFAULT_ASYMPTOTIC_SERIES_TERMS,
        }
        return defaults.get(key, default)

    return default


def quality_digits(precision: int) -> int:
    """Digits a residual must reach at ``precision`` to pass."""
    return max(1, precision // QUALITY_DIGITS_DIVISOR)
