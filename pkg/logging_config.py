#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# logging_config.py
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
Logging Configuration for FuchsMatch

Log output goes to stderr so that command results on stdout stay valid JSON.
The level comes from --loglevel, then FUCHS_LOGLEVEL, then WARNING;
FUCHS_LOGMODULES ("frobenius=DEBUG,connect=INFO") raises or lowers single
modules, which is how the per-recurrence DEBUG output is usually read.
"""

import logging
import os
import sys
from typing import Dict, Optional, TextIO

from defaults import LOGLEVEL_ENV_VAR, LOGMODULES_ENV_VAR
from exceptions import ConfigValueError

_command_line_log_level: Optional[str] = None

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DEFAULT_LOG_LEVEL = "WARNING"

LOG_LEVELS: Dict[str, int] = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
    "NONE": logging.CRITICAL + 1,
}


def set_log_level(log_level_str: str, stream: Optional[TextIO] = None) -> None:
    """
    Set the root log level and make sure a stderr handler exists

    Args:
        log_level_str: DEBUG, INFO, WARNING, ERROR, CRITICAL or NONE (unknown
            names fall back to WARNING)
        stream: Handler stream, stderr by default
    """
    level = LOG_LEVELS.get(log_level_str.upper(), logging.WARNING)
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    if not root_logger.handlers:
        handler = logging.StreamHandler(stream or sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root_logger.addHandler(handler)


def effective_log_level() -> str:
    """Command-line level, else the environment, else WARNING."""
    if _command_line_log_level:
        return _command_line_log_level
    return os.environ.get(LOGLEVEL_ENV_VAR, "").strip().upper() or DEFAULT_LOG_LEVEL


def parse_module_levels(text: str) -> Dict[str, int]:
    """
    Parse "module=LEVEL" pairs

    Raises:
        ConfigValueError: malformed pair or unknown level
    """
    levels = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, level = item.partition("=")
        level = level.strip().upper()
        if not sep or not name.strip() or level not in LOG_LEVELS:
            raise ConfigValueError(f"Bad module log level '{item}'", key=LOGMODULES_ENV_VAR, value=text)
        levels[name.strip()] = LOG_LEVELS[level]
    return levels


def set_module_levels(text: Optional[str] = None) -> Dict[str, int]:
    """Apply per-module levels from ``text`` or FUCHS_LOGMODULES."""
    if text is None:
        text = os.environ.get(LOGMODULES_ENV_VAR, "")
    levels = parse_module_levels(text)
    for name, level in levels.items():
        logging.getLogger(name).setLevel(level)
    return levels


def get_command_line_log_level() -> Optional[str]:
    return _command_line_log_level


def set_command_line_log_level(log_level: Optional[str]) -> None:
    """
    Set the command-line log level

    Args:
        log_level: Log level string or None to clear
    """
    global _command_line_log_level
    _command_line_log_level = log_level
