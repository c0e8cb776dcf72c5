#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Unit tests for event_logger.py
"""

import pytest
from unittest.mock import patch

import mpmath as mp

from event_logger import EventType, PipelineEventLogger


@pytest.fixture
def event_logger():
    """Create a PipelineEventLogger instance for testing"""
    return PipelineEventLogger()


class TestEventLoggerInitialization:
    """Test PipelineEventLogger initialization"""

    def test_init_event_count_is_zero(self, event_logger):
        """Test that event count starts at zero"""
        assert event_logger.get_event_count() == 0
        assert event_logger.get_warnings() == []

    def test_event_types(self):
        """Test the event type values"""
        assert EventType.CONNECTION_COMPUTED.value == "connection_computed"
        assert EventType.QUALITY_WARNING.value == "quality_warning"


class TestPipelineEvents:
    """Test logging of pipeline steps"""

    @patch('event_logger.logger')
    def test_log_operator_loaded(self, mock_logger, event_logger):
        """Test logging an operator load"""
        event_logger.log_operator_loaded("Z2N1", 3, "product")
        mock_logger.info.assert_called_once()
        message = mock_logger.info.call_args[0][0]
        assert "Z2N1" in message
        assert "order 3" in message
        assert "product" in message
        assert event_logger.get_event_count() == 1

    @patch('event_logger.logger')
    def test_log_basis_built(self, mock_logger, event_logger):
        """Test logging a basis in both modes"""
        event_logger.log_basis_built("1/4", 6, 400, True)
        event_logger.log_basis_built("w1", 6, 600, False)
        assert mock_logger.info.call_count == 2
        assert "exact" in mock_logger.info.call_args_list[0][0][0]
        assert "numeric" in mock_logger.info.call_args_list[1][0][0]

    @patch('event_logger.logger')
    def test_log_connection(self, mock_logger, event_logger):
        """Test logging a connection matrix"""
        event_logger.log_connection("0", "1/4", mp.mpf("1e-120"))
        message = mock_logger.info.call_args[0][0]
        assert "C(0,1/4)" in message
        assert "1.0e-120" in message

    @patch('event_logger.logger')
    def test_log_path_and_monodromy(self, mock_logger, event_logger):
        """Test logging a composed path and a monodromy matrix"""
        event_logger.log_path_composed(["0", "1/4", "1"], mp.mpf("1e-100"))
        event_logger.log_monodromy("0", "1/4", mp.mpf(1))
        assert "0->1/4->1" in mock_logger.info.call_args_list[0][0][0]
        assert "M(1/4)" in mock_logger.info.call_args_list[1][0][0]
        assert event_logger.get_event_count() == 2
        assert event_logger.get_type_count(EventType.PATH_COMPOSED) == 1
        assert event_logger.get_type_count(EventType.MONODROMY_COMPUTED) == 1
        assert event_logger.get_type_count(EventType.PIN_APPLIED) == 0

    @patch('event_logger.logger')
    def test_log_recognized(self, mock_logger, event_logger):
        """Test logging a recognized constant"""
        event_logger.log_recognized("C[2,3]", "-9/64*sqrt3/pi", 118)
        message = mock_logger.info.call_args[0][0]
        assert "C[2,3]" in message
        assert "118 digits" in message


class TestQualityWarnings:
    """Test quality warnings"""

    @patch('event_logger.logger')
    def test_warning_goes_to_warning_level(self, mock_logger, event_logger):
        """Test that quality warnings use WARNING and are remembered"""
        event_logger.log_quality_warning("product identity residual", mp.mpf("0.5"))
        mock_logger.warning.assert_called_once()
        mock_logger.info.assert_not_called()
        assert event_logger.get_warnings() == ["product identity residual: 0.5"]

    @patch('event_logger.logger')
    def test_warning_without_value(self, mock_logger, event_logger):
        event_logger.log_quality_warning("paths disagree")
        assert event_logger.get_warnings() == ["paths disagree"]


class TestSystemEvents:
    """Test command and system events"""

    @patch('event_logger.logger')
    def test_log_command_received(self, mock_logger, event_logger):
        """Test that empty options leave no trailing space"""
        event_logger.log_command_received("connect")
        assert mock_logger.info.call_args[0][0] == "EVENT: Command received: connect"

    @patch('event_logger.logger')
    def test_log_system_event_with_details(self, mock_logger, event_logger):
        event_logger.log_system_event("Cache cleared", "3 bases")
        assert "Cache cleared - 3 bases" in mock_logger.info.call_args[0][0]

    @patch('event_logger.logger')
    def test_log_system_event_without_details(self, mock_logger, event_logger):
        event_logger.log_system_event("Started")
        assert mock_logger.info.call_args[0][0] == "EVENT: System event: Started"
