#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#############################################################################
#
# FuchsMatch
# Copyright (c) 2025-2026 FuchsMatch developers
# All rights reserved.
#
# event_logger.py
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
Event Logger for FuchsMatch

This module provides event logging for the steps of a run: operators
loaded, local bases built, connection and monodromy matrices computed,
constants recognized and quality warnings.
"""

import logging
from enum import Enum
from typing import Any, Dict, Optional

import mpmath as mp

logger = logging.getLogger(__name__)


class EventType(Enum):
    """Event types that can be logged"""
    OPERATOR_LOADED = "operator_loaded"
    BASIS_BUILT = "basis_built"
    PIN_APPLIED = "pin_applied"
    PATH_COMPOSED = "path_composed"
    CONNECTION_COMPUTED = "connection_computed"
    MONODROMY_COMPUTED = "monodromy_computed"
    VALUE_RECOGNIZED = "value_recognized"
    QUALITY_WARNING = "quality_warning"
    COMMAND_RECEIVED = "command_received"
    SYSTEM_EVENT = "system_event"


class PipelineEventLogger:
    """
    Event logger for FuchsMatch

    Logs events to the Python logging system with structured information.
    Normal steps go to INFO, quality problems to WARNING.
    """

    def __init__(self):
        """Initialize the event logger"""
        self._event_count = 0
        self._by_type: Dict[EventType, int] = {}
        self._warnings = []

    def _count(self, event_type: EventType) -> None:
        self._event_count += 1
        self._by_type[event_type] = self._by_type.get(event_type, 0) + 1

    def log_operator_loaded(self, label: str, order: int, source: str = "file") -> None:
        """
        Log operator load

        Args:
            label: Operator label
            order: Operator order
            source: Where it came from ('file', 'fixture', 'product')
        """
        logger.info(f"EVENT: Operator {label} of order {order} loaded (source: {source})")
        self._count(EventType.OPERATOR_LOADED)

    def log_basis_built(self, point: str, order: int, terms: int, exact: bool) -> None:
        mode = "exact" if exact else "numeric"
        logger.info(f"EVENT: Basis at {point} built ({order} elements, N={terms}, {mode})")
        self._count(EventType.BASIS_BUILT)

    def log_pin_applied(self, operator: str, point: str) -> None:
        logger.info(f"EVENT: Pin applied to {operator} at {point}")
        self._count(EventType.PIN_APPLIED)

    def log_path_composed(self, path: list, residual: Any) -> None:
        logger.info(f"EVENT: Path {'->'.join(path)} composed, residual {mp.nstr(residual, 5)}")
        self._count(EventType.PATH_COMPOSED)

    def log_connection(self, from_pt: str, to_pt: str, residual: Any) -> None:
        """
        Log a computed connection matrix

        Args:
            from_pt: Source point name
            to_pt: Target point name
            residual: Validation residual
        """
        logger.info(f"EVENT: C({from_pt},{to_pt}) computed, residual {mp.nstr(residual, 5)}")
        self._count(EventType.CONNECTION_COMPUTED)

    def log_monodromy(self, base: str, around: str, det: Any) -> None:
        logger.info(f"EVENT: M({around}) at base {base} computed, det {mp.nstr(det, 10)}")
        self._count(EventType.MONODROMY_COMPUTED)

    def log_recognized(self, what: str, form: str, digits: int) -> None:
        """
        Log a recognized constant

        Args:
            what: Entry or value description
            form: Closed form text
            digits: Verified digits
        """
        logger.info(f"EVENT: {what} recognized as {form} ({digits} digits)")
        self._count(EventType.VALUE_RECOGNIZED)

    def log_quality_warning(self, text: str, value: Optional[Any] = None) -> None:
        """
        Log quality warning

        Args:
            text: Warning text
            value: Offending value (residual, difference)
        """
        if value is not None:
            text = f"{text}: {mp.nstr(value, 5)}"
        logger.warning(f"EVENT: Quality warning: {text}")
        self._warnings.append(text)
        self._count(EventType.QUALITY_WARNING)

    def log_command_received(self, command: str, options: str = "") -> None:
        logger.info(f"EVENT: Command received: {command} {options}".rstrip())
        self._count(EventType.COMMAND_RECEIVED)

    def log_system_event(self, event: str, details: Optional[str] = None) -> None:
        """
        Log system event

        Args:
            event: Event description
            details: Optional additional details
        """
        if details:
            logger.info(f"EVENT: System event: {event} - {details}")
        else:
            logger.info(f"EVENT: System event: {event}")
        self._count(EventType.SYSTEM_EVENT)

    def get_event_count(self) -> int:
        """
        Get total number of events logged

        Returns:
            Total event count
        """
        return self._event_count

    def get_type_count(self, event_type: EventType) -> int:
        return self._by_type.get(event_type, 0)

    def get_warnings(self) -> list:
        return list(self._warnings)
