"""
Логгеры formal-buds: цветной вывод colorlog в stderr
"""

import logging
import sys
from typing import Optional

import colorlog

from algebra_constants import AlgebraConstants
from settings import get_settings


def _configured_level() -> int:
    level = logging.getLevelName(get_settings().log_level.upper())
    return level if isinstance(level, int) else logging.INFO


def setup_colored_logger(
    name: str,
    info_color: str = "green",
    level: Optional[int] = None,
    format_string: Optional[str] = None,
) -> logging.Logger:
    """
    Создает логгер с цветным форматтером

    Args:
        name: имя логгера (ширина колонки имени подбирается по нему)
        info_color: цвет INFO-сообщений, различает подсистемы
        level: уровень; по умолчанию FORMAL_BUDS_LOG_LEVEL
        format_string: формат colorlog; по умолчанию AlgebraConstants.LOG_FORMAT

    Returns:
        логгер без передачи записей родителю
    """
    formatter = colorlog.ColoredFormatter(
        format_string or AlgebraConstants.LOG_FORMAT.format(width=max(8, len(name))),
        datefmt=AlgebraConstants.LOG_DATE_FORMAT,
        log_colors={**AlgebraConstants.LOG_COLORS, 'INFO': info_color},
    )
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    logger = colorlog.getLogger(name)
    logger.setLevel(_configured_level() if level is None else level)
    # повторный вызов не должен дублировать вывод
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.propagate = False
    return logger


algebra_logger = setup_colored_logger("ALGEBRA")
check_logger = setup_colored_logger("CHECK", info_color="purple")
cli_logger = setup_colored_logger("CLI", info_color="light_blue")
