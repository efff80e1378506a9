"""
Pydantic-модели JSON-документов formal-buds: формат рядов и отчеты командной строки
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError

from algebra_constants import AlgebraConstants
from algebra_errors import InvalidArgumentError
from coeff_rings import RingDescriptor
from tpseries import TruncatedSeries


class TermModel(BaseModel):
    """Моном ряда"""
    exp: List[int] = Field(..., description="Вектор показателей")
    coef: str = Field(..., description="Коэффициент: целое число или дробь a/b")


class SeriesModel(BaseModel):
    """Усеченный ряд; термы в градуированном лексикографическом порядке"""
    ring: str = Field(..., description="Токен кольца: z, q, zmod:n")
    vars: int = Field(..., ge=0, description="Число переменных")
    precision: int = Field(..., ge=1, description="Точность N")
    terms: List[TermModel] = Field(default_factory=list, description="Ненулевые мономы")

    @classmethod
    def from_series(cls, series: TruncatedSeries) -> "SeriesModel":
        return cls(
            ring=str(series.ring),
            vars=series.num_vars,
            precision=series.precision,
            terms=[TermModel(exp=list(e), coef=str(c)) for e, c in series.sorted_terms()],
        )

    def to_series(self) -> TruncatedSeries:
        ring = RingDescriptor.parse(self.ring)
        terms: Dict[tuple, Any] = {}
        for term in self.terms:
            exponents = tuple(term.exp)
            if exponents in terms:
                raise InvalidArgumentError(f"Моном {list(exponents)} задан дважды")
            terms[exponents] = ring.parse_element(term.coef)
        return TruncatedSeries(ring, self.vars, self.precision, terms)


def series_to_json(series: TruncatedSeries) -> str:
    return json.dumps(SeriesModel.from_series(series).model_dump(), sort_keys=True)


def series_from_json(text: str) -> TruncatedSeries:
    """
    Raises:
        InvalidArgumentError: документ не соответствует схеме
    """
    try:
        model = SeriesModel.model_validate_json(text)
    except ValidationError as e:
        raise InvalidArgumentError(f"Некорректный JSON ряда: {e.error_count()} ошибок",
                                   {"errors": [err["msg"] for err in e.errors()]})
    return model.to_series()


class HeightModel(BaseModel):
    """Высота бутона"""
    finite: bool = Field(..., description="Найдена ли конечная высота")
    h: Optional[int] = Field(default=None, description="Высота")
    u: Optional[str] = Field(default=None, description="Старший коэффициент u при x^(p^h)")
    at_least: Optional[int] = Field(default=None, description="Нижняя оценка высоты, если [p]_F = 0 до границы")


class CocycleClassificationModel(BaseModel):
    """Результат перебора коциклов"""
    k: int = Field(..., description="Степень")
    ring: str = Field(..., description="Кольцо")
    count: int = Field(..., description="Число коциклов")
    cocycles: List[List[str]] = Field(..., description="Векторы коэффициентов a_1..a_{k-1}")
    universal: List[str] = Field(..., description="Коэффициенты универсального коцикла c_k")
    pi0: int = Field(..., description="Число компонент связности группоида")
    stabilizer: int = Field(..., description="Порядок группы автоморфизмов объекта")


class GroupoidInvariantsModel(BaseModel):
    """Инварианты группоида коциклов"""
    k: int = Field(..., description="Степень")
    ring: str = Field(..., description="Кольцо")
    pi0: int = Field(..., description="Число компонент связности")
    stabilizer: int = Field(..., description="Порядок группы автоморфизмов")
    count: int = Field(..., description="Число коциклов")


class AbelianGroupModel(BaseModel):
    """Конечно порожденная абелева группа"""
    free: int = Field(..., description="Ранг свободной части")
    torsion: List[int] = Field(default_factory=list, description="Инвариантные множители")


class SmithFormModel(BaseModel):
    """Нормальная форма Смита"""
    D: List[List[int]] = Field(..., description="Диагональная матрица")
    U: List[List[int]] = Field(..., description="Левое унимодулярное преобразование")
    V: List[List[int]] = Field(..., description="Правое унимодулярное преобразование")
    invariant_factors: List[int] = Field(..., description="Ненулевые диагональные элементы")


class CheckIssueModel(BaseModel):
    """Нарушенное тождество"""
    check: str = Field(..., description="Имя проверки")
    trial: int = Field(..., description="Номер испытания")
    description: str = Field(..., description="Описание")
    expected: str = Field(..., description="Ожидаемое значение")
    actual: str = Field(..., description="Фактическое значение")


class CheckReportModel(BaseModel):
    """Отчет рандомизированной проверки"""
    name: str = Field(..., description="Набор проверок")
    seed: int = Field(..., description="Зерно")
    trials: int = Field(..., description="Число испытаний")
    failures: int = Field(..., description="Число нарушений")
    passed: bool = Field(..., description="Прошли ли все проверки")
    statistics: Dict[str, int] = Field(..., description="Счетчики по проверкам")
    issues: List[CheckIssueModel] = Field(default_factory=list, description="Нарушения")


class CheckSuitesModel(BaseModel):
    """Сводка нескольких наборов проверок"""
    passed: bool = Field(..., description="Прошли ли все наборы")
    suites: Dict[str, CheckReportModel] = Field(..., description="Отчеты по наборам")


class ErrorResponse(BaseModel):
    """Ответ с ошибкой"""
    error: str = Field(..., description="Код ошибки")
    message: str = Field(..., description="Сообщение")
    details: Dict[str, Any] = Field(default_factory=dict, description="Подробности")
    schema_version: str = Field(default=AlgebraConstants.SCHEMA_VERSION, description="Версия схемы")
