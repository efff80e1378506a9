"""
Исключения formal-buds

Два семейства:
- AlgebraError и его наследники: неверный ввод или нарушенное предусловие
  (код выхода 2);
- CheckFailedError и его наследники: математическая проверка опровергнута
  (код выхода 1), с контрпримером.
"""

from typing import Any, Dict, Optional


class AlgebraError(Exception):
    """Базовая ошибка библиотеки"""

    error_code = "algebra-error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class DescriptorMismatchError(AlgebraError):
    error_code = "descriptor-mismatch"


class InvalidArgumentError(AlgebraError):
    error_code = "invalid-argument"


class NotEnumerableError(AlgebraError):
    error_code = "not-enumerable"


class ShapeMismatchError(AlgebraError):
    error_code = "shape-mismatch"


class ArityMismatchError(AlgebraError):
    error_code = "arity-mismatch"


class NotInvertibleError(AlgebraError):
    error_code = "not-invertible"


class NotDivisibleError(AlgebraError):
    """Деление на целое не выполнимо; в details хранится степень"""
    error_code = "not-divisible"


class AxiomViolationError(AlgebraError):
    """Ряд не является бутоном формального группового закона"""
    error_code = "axiom-violation"

    def __init__(self, axiom: str, monomial: Optional[tuple], message: str):
        super().__init__(message, {"axiom": axiom, "monomial": list(monomial) if monomial else None})
        self.axiom = axiom
        self.monomial = monomial


class BudMismatchError(AlgebraError):
    error_code = "bud-mismatch"


class DegreeMismatchError(AlgebraError):
    error_code = "degree-mismatch"


class WrongRingError(AlgebraError):
    error_code = "wrong-ring"


class InvalidFGLError(AlgebraError):
    error_code = "invalid-fgl"


class NeedsQAlgebraError(AlgebraError):
    error_code = "needs-q-algebra"


class TooLargeError(AlgebraError):
    error_code = "too-large"


class NotAComplexError(AlgebraError):
    error_code = "not-a-complex"


class InsufficientTruncationError(AlgebraError):
    error_code = "insufficient-truncation"


class CheckFailedError(AlgebraError):
    """Математическое тождество опровергнуто"""
    error_code = "check-failed"


class InternalConsistencyError(CheckFailedError):
    error_code = "internal-consistency"


class ClassificationMismatchError(CheckFailedError):
    error_code = "classification-mismatch"
