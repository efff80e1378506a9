"""
Кольца коэффициентов: целые числа, вычеты по модулю n и рациональные числа

Все значения точные и хранятся в каноническом виде:
- Z: int;
- Z/n: int из [0, n);
- Q: несократимая Fraction с положительным знаменателем.

Ряды (tpseries) хранят "сырые" канонические значения и пользуются
методами RingDescriptor напрямую; RingElement - обертка для внешнего API.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple, Union

from algebra_constants import AlgebraConstants
from algebra_errors import (
    DescriptorMismatchError,
    InvalidArgumentError,
    NotEnumerableError,
)

RawValue = Union[int, Fraction]

INTEGERS = "integers"
INTEGERS_MOD_N = "integers-mod-n"
RATIONALS = "rationals"


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Расширенный алгоритм Евклида: (s, t, g) с s*a + t*b = g >= 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingDescriptor:
    """Описание кольца коэффициентов B"""
    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == INTEGERS_MOD_N:
            if self.modulus is None or self.modulus < 2:
                raise InvalidArgumentError(f"Модуль должен быть >= 2, получено: {self.modulus}")
        elif self.kind in (INTEGERS, RATIONALS):
            if self.modulus is not None:
                raise InvalidArgumentError(f"Модуль задается только для Z/n, получено: {self.kind}")
        else:
            raise InvalidArgumentError(f"Неизвестный тип кольца: {self.kind}")

    # --- конструкторы ---

    @classmethod
    def integers(cls) -> "RingDescriptor":
        return cls(INTEGERS)

    @classmethod
    def rationals(cls) -> "RingDescriptor":
        return cls(RATIONALS)

    @classmethod
    def zmod(cls, n: int) -> "RingDescriptor":
        return cls(INTEGERS_MOD_N, n)

    @classmethod
    def parse(cls, token: str) -> "RingDescriptor":
        """Разбирает токены вида "z", "q", "zmod:6" """
        token = token.strip().lower()
        if token == AlgebraConstants.RING_INTEGERS:
            return cls.integers()
        if token == AlgebraConstants.RING_RATIONALS:
            return cls.rationals()
        if token.startswith(AlgebraConstants.RING_ZMOD_PREFIX):
            raw = token[len(AlgebraConstants.RING_ZMOD_PREFIX):]
            try:
                n = int(raw)
            except ValueError:
                raise InvalidArgumentError(f"Некорректный модуль в токене кольца: {token!r}")
            return cls.zmod(n)
        raise InvalidArgumentError(f"Некорректный токен кольца: {token!r}")

    def __str__(self) -> str:
        if self.kind == INTEGERS:
            return AlgebraConstants.RING_INTEGERS
        if self.kind == RATIONALS:
            return AlgebraConstants.RING_RATIONALS
        return f"{AlgebraConstants.RING_ZMOD_PREFIX}{self.modulus}"

    @property
    def is_finite(self) -> bool:
        return self.kind == INTEGERS_MOD_N

    # --- операции над сырыми значениями ---

    def normalize(self, value: RawValue) -> RawValue:
        """Приводит значение к каноническому представителю"""
        if self.kind == INTEGERS_MOD_N:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    inverse = self.invert_raw(value.denominator % self.modulus)
                    if inverse is None:
                        raise InvalidArgumentError(
                            f"Знаменатель {value.denominator} необратим в {self}")
                    return (value.numerator * inverse) % self.modulus
                value = value.numerator
            return value % self.modulus
        if self.kind == RATIONALS:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise InvalidArgumentError(f"{value} не является целым числом")
            return value.numerator
        return int(value)

    def from_int(self, n: int) -> RawValue:
        return self.normalize(n)

    @property
    def zero_raw(self) -> RawValue:
        return self.normalize(0)

    @property
    def one_raw(self) -> RawValue:
        return self.normalize(1)

    def invert_raw(self, value: RawValue) -> Optional[RawValue]:
        if self.kind == RATIONALS:
            return None if value == 0 else 1 / Fraction(value)
        if self.kind == INTEGERS:
            return value if value in (1, -1) else None
        s, _, g = extended_gcd(int(value) % self.modulus, self.modulus)
        if g != 1:
            return None
        return s % self.modulus

    def divide_raw(self, value: RawValue, m: int) -> Optional[RawValue]:
        if m == 0:
            raise InvalidArgumentError("Деление на ноль")
        if self.kind == RATIONALS:
            return Fraction(value) / m
        if self.kind == INTEGERS:
            return value // m if value % m == 0 else None
        # Решение единственно только при gcd(m, n) = 1
        inverse = self.invert_raw(m % self.modulus)
        if inverse is None:
            return None
        return (value * inverse) % self.modulus

    # --- элементы ---

    def element(self, value: RawValue) -> "RingElement":
        return RingElement(self, self.normalize(value))

    def zero(self) -> "RingElement":
        return self.element(0)

    def one(self) -> "RingElement":
        return self.element(1)

    def parse_element(self, text: str) -> "RingElement":
        """Разбирает десятичную строку или дробь "a/b" """
        try:
            return self.element(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError):
            raise InvalidArgumentError(f"Некорректный элемент кольца: {text!r}")

    def format_raw(self, value: RawValue) -> str:
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return str(value)


@dataclass(frozen=True)
class RingElement:
    """Элемент кольца в каноническом виде"""
    ring: RingDescriptor
    value: RawValue

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise DescriptorMismatchError(
                    f"Элементы из разных колец: {self.ring} и {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, self.ring.normalize(self.value + other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, self.ring.normalize(self.value - other.value))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, self.ring.normalize(self.value * other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.normalize(-self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return self.ring.format_raw(self.value)


def ring_arith(a: RingElement, b: RingElement, op: str) -> RingElement:
    """
    Арифметика колец: op из {"add", "sub", "mul", "neg"}

    Для "neg" второй аргумент игнорируется, но должен принадлежать тому же
    кольцу.
    """
    if a.ring != b.ring:
        raise DescriptorMismatchError(f"Элементы из разных колец: {a.ring} и {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise InvalidArgumentError(f"Неизвестная операция: {op!r}")


def try_invert(a: RingElement) -> Optional[RingElement]:
    """Обратный элемент, если a - единица кольца; иначе None"""
    inverse = a.ring.invert_raw(a.value)
    return None if inverse is None else RingElement(a.ring, inverse)


def divide_by_integer(a: RingElement, m: int) -> Optional[RingElement]:
    """
    Единственное b с m*b = a, если оно существует

    Над Z/n ответ есть только при gcd(m, n) = 1: иначе решение либо
    отсутствует, либо не единственно, и возвращается None.
    """
    result = a.ring.divide_raw(a.value, m)
    return None if result is None else RingElement(a.ring, result)


def characteristic_prime(ring: RingDescriptor) -> Optional[int]:
    if ring.kind == INTEGERS_MOD_N and is_prime(ring.modulus):
        return ring.modulus
    return None


def enumerate_elements(ring: RingDescriptor) -> List[RingElement]:
    """Все элементы конечного кольца: 0, 1, ..., n-1"""
    if not ring.is_finite:
        raise NotEnumerableError(f"Кольцо {ring} бесконечно")
    return [RingElement(ring, v) for v in range(ring.modulus)]
