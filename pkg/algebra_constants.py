class AlgebraConstants:
    """Константы formal-buds"""

    # Версия схемы JSON-отчетов
    SCHEMA_VERSION = "1.0"

    # Токены колец
    RING_INTEGERS = "z"
    RING_RATIONALS = "q"
    RING_ZMOD_PREFIX = "zmod:"

    # Встроенные формальные групповые законы
    BUILTIN_FGLS = ["additive", "multiplicative"]

    # Коды выхода командной строки
    EXIT_OK = 0
    EXIT_CHECK_FAILED = 1
    EXIT_INVALID_INPUT = 2

    # Форматы вывода
    OUTPUT_FORMATS = ["json", "text"]

    # Наборы проверок для `gamma check`
    CHECK_SUITES = ["gammaring", "fstar"]
    ALL_SUITES = "all"

    # Параметры случайных элементов в проверках
    RANDOM_MAX_TERMS = 3
    RANDOM_COEFFICIENT_RANGE = (-3, 3)
    RANDOM_HZ_RANGE = (-2, 2)
    RANDOM_NSERIES_RANGE = (-3, 3)

    # Логирование (stdout занят JSON-отчетом, поэтому логи идут в stderr)
    LOG_FORMAT = '%(log_color)s%(asctime)s - %(name)-{width}s - %(levelname)-8s%(reset)s %(message)s'
    LOG_DATE_FORMAT = '%H:%M:%S'
    LOG_COLORS = {
        'DEBUG': 'cyan',
        'WARNING': 'yellow',
        'ERROR': 'red',
        'CRITICAL': 'red,bg_white',
    }
