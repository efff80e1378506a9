"""
Усеченные многомерные степенные ряды с точными коэффициентами

Ряд хранится разреженно: словарь "вектор показателей -> коэффициент",
без нулевых коэффициентов и без свободного члена (все ряды лежат в
идеале аугментации). Точность N задается явно: хранятся только мономы
степени 1..N. Бинарные операции требуют совпадения кольца, числа
переменных и точности; единственное приведение точности - truncate.

Порядок мономов при выводе - градуированный лексикографический:
сначала по полной степени, внутри степени - по убыванию показателя
первой переменной, затем второй и т.д.
"""

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from algebra_errors import (
    ArityMismatchError,
    InvalidArgumentError,
    NotDivisibleError,
    NotInvertibleError,
    ShapeMismatchError,
)
from coeff_rings import RawValue, RingDescriptor, RingElement

MultiIndex = Tuple[int, ...]
Coefficient = Union[RingElement, RawValue]


def total_degree(exponents: MultiIndex) -> int:
    return sum(exponents)


def grlex_key(exponents: MultiIndex) -> Tuple[int, Tuple[int, ...]]:
    """Ключ сортировки мономов в градуированном лексикографическом порядке"""
    return total_degree(exponents), tuple(-e for e in exponents)


class TruncatedSeries:
    """Ряд из идеала аугментации кольца B[[x_0, ..., x_{n-1}]] по модулю степени N+1"""

    __slots__ = ("ring", "num_vars", "precision", "_terms", "_hash")

    def __init__(
        self,
        ring: RingDescriptor,
        num_vars: int,
        precision: int,
        terms: Optional[Mapping[MultiIndex, Coefficient]] = None,
    ):
        if num_vars < 0:
            raise InvalidArgumentError(f"Число переменных должно быть >= 0: {num_vars}")
        if precision < 1:
            raise InvalidArgumentError(f"Точность должна быть >= 1: {precision}")
        clean: Dict[MultiIndex, RawValue] = {}
        for exponents, coefficient in (terms or {}).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != num_vars or any(e < 0 for e in exponents):
                raise ShapeMismatchError(
                    f"Моном {exponents} не подходит для {num_vars} переменных")
            degree = total_degree(exponents)
            if degree == 0:
                raise ShapeMismatchError("Свободный член запрещен: ряды лежат в идеале аугментации")
            if degree > precision:
                raise ShapeMismatchError(
                    f"Моном {exponents} степени {degree} превышает точность {precision}")
            if isinstance(coefficient, RingElement):
                if coefficient.ring != ring:
                    raise ShapeMismatchError(
                        f"Коэффициент из кольца {coefficient.ring}, ожидалось {ring}")
                value = coefficient.value
            else:
                value = ring.normalize(coefficient)
            value = ring.normalize(clean.get(exponents, 0) + value)
            if value == 0:
                clean.pop(exponents, None)
            else:
                clean[exponents] = value
        self.ring = ring
        self.num_vars = num_vars
        self.precision = precision
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_raw(cls, ring: RingDescriptor, num_vars: int, precision: int,
                  raw: Dict[MultiIndex, RawValue]) -> "TruncatedSeries":
        """Быстрый конструктор: нормализует значения и отбрасывает нули"""
        series = cls.__new__(cls)
        series.ring = ring
        series.num_vars = num_vars
        series.precision = precision
        terms = {}
        for exponents, value in raw.items():
            value = ring.normalize(value)
            if value != 0:
                terms[exponents] = value
        series._terms = terms
        series._hash = None
        return series

    # --- доступ к коэффициентам ---

    def raw_terms(self) -> Dict[MultiIndex, RawValue]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[MultiIndex, RawValue]]:
        return self._terms.items()

    def coefficient(self, exponents: Sequence[int]) -> RingElement:
        return RingElement(self.ring, self._terms.get(tuple(exponents), self.ring.zero_raw))

    def raw_coefficient(self, exponents: Sequence[int]) -> RawValue:
        return self._terms.get(tuple(exponents), self.ring.zero_raw)

    def sorted_terms(self) -> List[Tuple[MultiIndex, RingElement]]:
        return [(e, RingElement(self.ring, self._terms[e]))
                for e in sorted(self._terms, key=grlex_key)]

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    # --- сравнение ---

    def shape(self) -> Tuple[RingDescriptor, int, int]:
        return self.ring, self.num_vars, self.precision

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.shape() == other.shape() and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.num_vars, self.precision,
                               frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.ring}, vars={self.num_vars}, N={self.precision}, {self.to_text()})"

    def to_text(self) -> str:
        """Человекочитаемая запись вида 3*x0^2*x1 + x1"""
        if not self._terms:
            return "0"
        parts = []
        for exponents, coefficient in self.sorted_terms():
            factors = []
            for index, e in enumerate(exponents):
                if e == 1:
                    factors.append(f"x{index}")
                elif e > 1:
                    factors.append(f"x{index}^{e}")
            monomial = "*".join(factors)
            text = str(coefficient)
            parts.append(monomial if text == "1" else f"{text}*{monomial}")
        return " + ".join(parts)

    # --- операторы ---

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return scalar_mul(other, self)

    __rmul__ = __mul__

    def __neg__(self):
        return series_neg(self)


# --- конструкторы ---

def zero_series(ring: RingDescriptor, num_vars: int, precision: int) -> TruncatedSeries:
    return TruncatedSeries(ring, num_vars, precision)


def variable(ring: RingDescriptor, num_vars: int, precision: int, index: int) -> TruncatedSeries:
    """Переменная x_index как ряд"""
    if not 0 <= index < num_vars:
        raise InvalidArgumentError(f"Индекс переменной {index} вне диапазона 0..{num_vars - 1}")
    exponents = tuple(1 if i == index else 0 for i in range(num_vars))
    return TruncatedSeries._from_raw(ring, num_vars, precision, {exponents: 1})


def univariate(ring: RingDescriptor, precision: int, coefficients: Sequence[Coefficient]) -> TruncatedSeries:
    """Ряд от одной переменной по коэффициентам при x, x^2, ..."""
    if len(coefficients) > precision:
        raise ShapeMismatchError(
            f"Задано {len(coefficients)} коэффициентов при точности {precision}")
    return TruncatedSeries(ring, 1, precision,
                           {(i + 1,): c for i, c in enumerate(coefficients)})


# --- проверки формы ---

def _require_same_shape(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.shape() != g.shape():
        raise ShapeMismatchError(
            f"Несовместимые ряды: (кольцо, переменные, точность) = "
            f"({f.ring}, {f.num_vars}, {f.precision}) и ({g.ring}, {g.num_vars}, {g.precision})")


# --- арифметика ---

def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _require_same_shape(f, g)
    raw = dict(f._terms)
    for exponents, value in g._terms.items():
        raw[exponents] = raw.get(exponents, 0) + value
    return TruncatedSeries._from_raw(f.ring, f.num_vars, f.precision, raw)


def series_neg(f: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries._from_raw(f.ring, f.num_vars, f.precision,
                                     {e: -v for e, v in f._terms.items()})


def series_sub(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return series_add(f, series_neg(g))


def scalar_mul(b: Union[RingElement, int], f: TruncatedSeries) -> TruncatedSeries:
    if isinstance(b, RingElement):
        if b.ring != f.ring:
            raise ShapeMismatchError(f"Скаляр из кольца {b.ring}, ряд над {f.ring}")
        value = b.value
    else:
        value = f.ring.normalize(b)
    return TruncatedSeries._from_raw(f.ring, f.num_vars, f.precision,
                                     {e: value * v for e, v in f._terms.items()})


def _mul_raw(precision: int, a: Mapping[MultiIndex, RawValue],
             b: Mapping[MultiIndex, RawValue]) -> Dict[MultiIndex, RawValue]:
    """Произведение разреженных словарей с отбрасыванием степеней > precision (без нормализации)"""
    out: Dict[MultiIndex, RawValue] = {}
    if not a or not b:
        return out
    b_sorted = sorted((total_degree(e), e, v) for e, v in b.items())
    for ea, va in a.items():
        room = precision - total_degree(ea)
        for degree, eb, vb in b_sorted:
            if degree > room:
                break
            exponents = tuple(x + y for x, y in zip(ea, eb))
            out[exponents] = out.get(exponents, 0) + va * vb
    return out


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _require_same_shape(f, g)
    return TruncatedSeries._from_raw(f.ring, f.num_vars, f.precision,
                                     _mul_raw(f.precision, f._terms, g._terms))


def series_pow(f: TruncatedSeries, exponent: int) -> TruncatedSeries:
    if exponent < 1:
        raise InvalidArgumentError("Степень ряда без свободного члена должна быть >= 1")
    result = f
    for _ in range(exponent - 1):
        result = series_mul(result, f)
    return result


# --- усечение и однородные части ---

def truncate(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """Отбрасывает мономы степени > k; результат имеет точность k"""
    if not 1 <= k <= f.precision:
        raise InvalidArgumentError(f"Точность усечения {k} вне диапазона 1..{f.precision}")
    return TruncatedSeries._from_raw(
        f.ring, f.num_vars, k,
        {e: v for e, v in f._terms.items() if total_degree(e) <= k})


def homogeneous_part(f: TruncatedSeries, k: int) -> TruncatedSeries:
    return TruncatedSeries._from_raw(
        f.ring, f.num_vars, f.precision,
        {e: v for e, v in f._terms.items() if total_degree(e) == k})


def lowest_degree(f: TruncatedSeries) -> Optional[int]:
    """Порядок ряда (наименьшая степень монома) или None для нулевого ряда"""
    if f.is_zero:
        return None
    return min(total_degree(e) for e in f._terms)


def is_linear(f: TruncatedSeries) -> bool:
    return all(total_degree(e) == 1 for e in f._terms)


# --- подстановка ---

def substitute(g: TruncatedSeries, fs: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """
    Подстановка g(f_1, ..., f_m) с усечением на точности g

    Все f_i лежат в идеале аугментации, поэтому отброшенные мономы
    не влияют на оставшиеся коэффициенты.

    Args:
        g: ряд от m переменных
        fs: m рядов от n переменных, точность каждого равна точности g

    Returns:
        ряд от n переменных точности N
    """
    if len(fs) != g.num_vars:
        raise ArityMismatchError(
            f"Ряд от {g.num_vars} переменных, а подставляется {len(fs)} рядов")
    if not fs:
        # Ряд от нуля переменных равен нулю
        return TruncatedSeries._from_raw(g.ring, 0, g.precision, {})
    target_vars = fs[0].num_vars
    for f in fs:
        if f.shape() != (g.ring, target_vars, g.precision):
            raise ShapeMismatchError(
                f"Подставляемый ряд имеет форму ({f.ring}, {f.num_vars}, {f.precision}), "
                f"ожидалось ({g.ring}, {target_vars}, {g.precision})")

    N = g.precision
    valuations = [lowest_degree(f) for f in fs]
    # powers[i][e] - сырой словарь f_i^e
    powers: List[Dict[int, Dict[MultiIndex, RawValue]]] = [{1: f._terms} for f in fs]

    def power(i: int, e: int) -> Dict[MultiIndex, RawValue]:
        cache = powers[i]
        if e not in cache:
            previous = power(i, e - 1)
            cache[e] = _normalized(g.ring, _mul_raw(N, previous, fs[i]._terms))
        return cache[e]

    result: Dict[MultiIndex, RawValue] = {}
    for exponents, coefficient in g._terms.items():
        lower_bound = 0
        skip = False
        for i, e in enumerate(exponents):
            if e == 0:
                continue
            if valuations[i] is None:
                skip = True
                break
            lower_bound += e * valuations[i]
        if skip or lower_bound > N:
            continue
        product: Optional[Dict[MultiIndex, RawValue]] = None
        for i, e in enumerate(exponents):
            if e == 0:
                continue
            factor = power(i, e)
            product = factor if product is None else _mul_raw(N, product, factor)
            if not product:
                break
        if not product:
            continue
        for exponents_out, value in product.items():
            result[exponents_out] = result.get(exponents_out, 0) + coefficient * value
    return TruncatedSeries._from_raw(g.ring, target_vars, N, result)


def _normalized(ring: RingDescriptor, raw: Dict[MultiIndex, RawValue]) -> Dict[MultiIndex, RawValue]:
    out = {}
    for e, v in raw.items():
        v = ring.normalize(v)
        if v != 0:
            out[e] = v
    return out


# --- обращение рядов ---

def compositional_inverse(phi: TruncatedSeries) -> TruncatedSeries:
    """
    Композиционно обратный ряд psi: phi(psi(x)) = x = psi(phi(x))

    Решается по степеням: на шаге d коэффициент при x^d в phi(psi)
    исправляется добавлением t*x^d к psi, где t = -ошибка / a,
    a - линейный коэффициент phi (обязан быть обратимым).
    """
    if phi.num_vars != 1:
        raise ShapeMismatchError("Композиционное обращение определено только для рядов от одной переменной")
    ring = phi.ring
    linear_inverse = ring.invert_raw(phi.raw_coefficient((1,)))
    if linear_inverse is None:
        raise NotInvertibleError(
            f"Линейный коэффициент {ring.format_raw(phi.raw_coefficient((1,)))} не обратим в {ring}")
    N = phi.precision
    psi_raw: Dict[MultiIndex, RawValue] = {(1,): linear_inverse}
    for d in range(2, N + 1):
        psi = TruncatedSeries._from_raw(ring, 1, N, psi_raw)
        error = substitute(phi, [psi]).raw_coefficient((d,))
        if error != 0:
            psi_raw[(d,)] = ring.normalize(-error * linear_inverse)
    return TruncatedSeries._from_raw(ring, 1, N, psi_raw)


def reciprocal_one_plus(h: TruncatedSeries) -> TruncatedSeries:
    """Ряд u с (1 + h)(1 + u) = 1, т.е. u = -h + h^2 - h^3 + ..."""
    result: Dict[MultiIndex, RawValue] = {}
    power = series_neg(h)
    while not power.is_zero:
        for e, v in power._terms.items():
            result[e] = result.get(e, 0) + v
        power = series_mul(power, series_neg(h))
    return TruncatedSeries._from_raw(h.ring, h.num_vars, h.precision, result)


# --- дифференцирование и интегрирование ---

def partial_derivative(f: TruncatedSeries, index: int) -> Tuple[RingElement, TruncatedSeries]:
    """
    Формальная частная производная по x_index

    Производная выводит из идеала аугментации, поэтому свободный член
    возвращается отдельно.

    Returns:
        (свободный член, ряд точности N-1 без свободного члена)
    """
    if not 0 <= index < f.num_vars:
        raise InvalidArgumentError(f"Индекс переменной {index} вне диапазона")
    if f.precision < 2:
        raise InvalidArgumentError("Для производной нужна точность >= 2")
    constant = f.ring.zero_raw
    raw: Dict[MultiIndex, RawValue] = {}
    for exponents, value in f._terms.items():
        e = exponents[index]
        if e == 0:
            continue
        lowered = exponents[:index] + (e - 1,) + exponents[index + 1:]
        if total_degree(lowered) == 0:
            constant = f.ring.normalize(constant + value)
        else:
            raw[lowered] = raw.get(lowered, 0) + e * value
    return (RingElement(f.ring, constant),
            TruncatedSeries._from_raw(f.ring, f.num_vars, f.precision - 1, raw))


def integrate_univariate(f: TruncatedSeries) -> TruncatedSeries:
    """Первообразная без свободного члена: x^i -> x^(i+1)/(i+1), точность N+1"""
    if f.num_vars != 1:
        raise ShapeMismatchError("Интегрирование определено только для рядов от одной переменной")
    raw: Dict[MultiIndex, RawValue] = {}
    for (i,), value in f._terms.items():
        quotient = f.ring.divide_raw(value, i + 1)
        if quotient is None:
            raise NotDivisibleError(
                f"Коэффициент при x^{i} не делится на {i + 1} в {f.ring}",
                {"degree": i + 1})
        raw[(i + 1,)] = quotient
    return TruncatedSeries._from_raw(f.ring, 1, f.precision + 1, raw)
