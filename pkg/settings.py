"""
Настройки formal-buds (переменные окружения FORMAL_BUDS_* и файл .env)
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class AlgebraSettings(BaseSettings):
    """Параметры по умолчанию для вычислений и командной строки"""

    model_config = SettingsConfigDict(
        env_prefix="FORMAL_BUDS_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    enumeration_budget: int = Field(
        default=10 ** 7, ge=1,
        description="Максимальный размер пространства перебора коциклов",
    )
    default_precision: int = Field(default=8, ge=1, description="Точность рядов по умолчанию")
    default_seed: int = Field(default=17, description="Зерно генератора случайных чисел")
    max_set_size: int = Field(default=3, ge=0, description="Максимальный размер точечного множества в проверках")
    log_level: str = Field(default="INFO", description="Уровень логирования")


@lru_cache(maxsize=1)
def get_settings() -> AlgebraSettings:
    """Возвращает (кэшированные) настройки"""
    return AlgebraSettings()
