import logging

import pytest

from logger_config import algebra_logger, setup_colored_logger
from settings import get_settings


def render(logger: logging.Logger, message: str) -> str:
    record = logging.LogRecord(logger.name, logging.INFO, __file__, 1, message, None, None)
    return logger.handlers[0].formatter.format(record)


class TestColoredLogger:

    def test_custom_format_string(self):
        logger = setup_colored_logger("FORMAT-TEST", format_string="%(levelname)s|%(message)s")
        assert render(logger, "hello").startswith("INFO|hello")

    def test_default_format_includes_name(self):
        assert "ALGEBRA" in render(algebra_logger, "hello")
        assert "hello" in render(algebra_logger, "hello")

    def test_single_handler_without_propagation(self):
        setup_colored_logger("REPEAT-TEST")
        logger = setup_colored_logger("REPEAT-TEST")
        assert len(logger.handlers) == 1
        assert logger.propagate is False

    @pytest.mark.parametrize("level, expected", [("DEBUG", logging.DEBUG), ("nonsense", logging.INFO)])
    def test_level_from_settings(self, monkeypatch, level, expected):
        monkeypatch.setenv("FORMAL_BUDS_LOG_LEVEL", level)
        get_settings.cache_clear()
        try:
            assert setup_colored_logger("LEVEL-TEST").level == expected
        finally:
            get_settings.cache_clear()
