"""
Бутоны формальных групповых законов и их исчисление

Бутон порядка N - ряд F(x, y) точности N, для которого аксиомы
    F(x, 0) = x = F(0, x),  F(x, y) = F(y, x),  F(F(x, y), z) = F(x, F(y, z))
выполнены по модулю степени N+1. Строгие изоморфизмы - ряды phi(x) = x + ...;
группа Phi(B) действует на бутонах сопряжением
    F^phi(x, y) = phi(F(phi^-1(x), phi^-1(y))),
так что phi: F -> F^phi - строгий изоморфизм.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from algebra_errors import (
    AxiomViolationError,
    BudMismatchError,
    DegreeMismatchError,
    InternalConsistencyError,
    InvalidArgumentError,
    InvalidFGLError,
    NeedsQAlgebraError,
    NotDivisibleError,
    ShapeMismatchError,
    WrongRingError,
)
from cocycles import SymCocycle, make_cocycle, principal_cocycle, universal_cocycle
from coeff_rings import RingDescriptor, RingElement, characteristic_prime
from logger_config import algebra_logger as logger
from tpseries import (
    TruncatedSeries,
    compositional_inverse,
    grlex_key,
    integrate_univariate,
    partial_derivative,
    reciprocal_one_plus,
    scalar_mul,
    series_add,
    series_sub,
    substitute,
    total_degree,
    truncate,
    univariate,
    variable,
    zero_series,
)


@dataclass(frozen=True)
class FormalGroupBud:
    """Сертифицированный бутон формального группового закона (строится через validate_bud)"""
    series: TruncatedSeries

    @property
    def bud_order(self) -> int:
        return self.series.precision

    @property
    def ring(self) -> RingDescriptor:
        return self.series.ring


@dataclass(frozen=True)
class StrictIso:
    """Строгий изоморфизм phi(x) = x + ... (элемент Phi(B), или Phi_N(B) при точности N)"""
    series: TruncatedSeries

    def __post_init__(self):
        if self.series.num_vars != 1:
            raise ShapeMismatchError("Строгий изоморфизм - ряд от одной переменной")
        if self.series.raw_coefficient((1,)) != self.series.ring.one_raw:
            raise InvalidArgumentError(
                f"Линейный коэффициент строгого изоморфизма должен быть 1, получено "
                f"{self.series.coefficient((1,))}")

    @property
    def precision(self) -> int:
        return self.series.precision

    @property
    def ring(self) -> RingDescriptor:
        return self.series.ring

    @classmethod
    def identity(cls, ring: RingDescriptor, precision: int) -> "StrictIso":
        return cls(variable(ring, 1, precision, 0))

    @classmethod
    def from_coefficients(cls, ring: RingDescriptor, precision: int,
                          coefficients: Sequence[Union[RingElement, int]]) -> "StrictIso":
        """Коэффициенты при x, x^2, ...; первый обязан быть 1"""
        return cls(univariate(ring, precision, coefficients))


@dataclass(frozen=True)
class HeightResult:
    """Finite(h, u) либо AtLeastBound(bound)"""
    finite: bool
    h: Optional[int] = None
    u: Optional[RingElement] = None
    bound: Optional[int] = None

    @classmethod
    def finite_height(cls, h: int, u: RingElement) -> "HeightResult":
        return cls(True, h=h, u=u)

    @classmethod
    def at_least(cls, bound: int) -> "HeightResult":
        return cls(False, bound=bound)


# --- проверка аксиом ---

def _first_difference(lhs: TruncatedSeries, rhs: TruncatedSeries):
    monomials = set(e for e, _ in lhs.items()) | set(e for e, _ in rhs.items())
    for exponents in sorted(monomials, key=grlex_key):
        if lhs.raw_coefficient(exponents) != rhs.raw_coefficient(exponents):
            return exponents
    return None


def validate_bud(F: TruncatedSeries, N: Optional[int] = None) -> FormalGroupBud:
    """
    Проверяет аксиомы бутона формального группового закона точности N

    Raises:
        AxiomViolationError: с именем первой нарушенной аксиомы и мономом
    """
    if N is None:
        N = F.precision
    if F.num_vars != 2 or F.precision != N:
        raise ShapeMismatchError(
            f"Ожидался ряд от 2 переменных точности {N}, получено vars={F.num_vars}, N={F.precision}")
    one = F.ring.one_raw

    # 1. Единица: F(x, 0) = x, F(0, y) = y
    for exponents in ((1, 0), (0, 1)):
        if F.raw_coefficient(exponents) != one:
            raise AxiomViolationError(
                "unit", exponents, f"Коэффициент при {exponents} должен быть 1")
    for exponents, _ in sorted(F.items(), key=lambda item: grlex_key(item[0])):
        if total_degree(exponents) >= 2 and 0 in exponents:
            axiom = "unit-x" if exponents[1] == 0 else "unit-y"
            raise AxiomViolationError(
                axiom, exponents, f"F(x,0) != x: присутствует чистая степень {exponents}")

    # 2. Коммутативность
    for exponents, value in sorted(F.items(), key=lambda item: grlex_key(item[0])):
        if F.raw_coefficient((exponents[1], exponents[0])) != value:
            raise AxiomViolationError(
                "symmetry", exponents, f"F(x,y) != F(y,x) в мономе {exponents}")

    # 3. Ассоциативность в трех переменных
    x, y, z = (variable(F.ring, 3, N, i) for i in range(3))
    lhs = substitute(F, [substitute(F, [x, y]), z])
    rhs = substitute(F, [x, substitute(F, [y, z])])
    bad = _first_difference(lhs, rhs)
    if bad is not None:
        raise AxiomViolationError(
            "associativity", bad, f"F(F(x,y),z) != F(x,F(y,z)) в мономе {bad}")

    return FormalGroupBud(F)


def _certify(series: TruncatedSeries, context: str) -> FormalGroupBud:
    try:
        return validate_bud(series)
    except AxiomViolationError as e:
        logger.error(f"❌ {context}: результат не является бутоном ({e.axiom}, {e.monomial})")
        raise InternalConsistencyError(
            f"{context}: результат не является бутоном", {"axiom": e.axiom}) from e


# --- встроенные законы ---

def additive_fgl(ring: RingDescriptor, N: int) -> FormalGroupBud:
    """Аддитивный закон x + y"""
    return validate_bud(TruncatedSeries(ring, 2, N, {(1, 0): 1, (0, 1): 1}), N)


def multiplicative_fgl(ring: RingDescriptor, N: int) -> FormalGroupBud:
    """Мультипликативный закон x + y + xy"""
    terms = {(1, 0): 1, (0, 1): 1}
    if N >= 2:
        terms[(1, 1)] = 1
    return validate_bud(TruncatedSeries(ring, 2, N, terms), N)


def builtin_fgl(name: str, ring: RingDescriptor, N: int) -> FormalGroupBud:
    if name == "additive":
        return additive_fgl(ring, N)
    if name == "multiplicative":
        return multiplicative_fgl(ring, N)
    raise InvalidArgumentError(f"Неизвестный формальный групповой закон: {name!r}")


# --- обратный элемент и n-ряды ---

@lru_cache(maxsize=256)
def formal_inverse(F: FormalGroupBud) -> TruncatedSeries:
    """Формальный обратный iota(x): F(x, iota(x)) = 0, решается по степеням"""
    ring, N = F.ring, F.bud_order
    x = variable(ring, 1, N, 0)
    iota = {(1,): ring.normalize(-1)}
    for d in range(2, N + 1):
        current = TruncatedSeries._from_raw(ring, 1, N, iota)
        error = substitute(F.series, [x, current]).raw_coefficient((d,))
        if error != 0:
            iota[(d,)] = ring.normalize(-error)
    return TruncatedSeries._from_raw(ring, 1, N, iota)


@lru_cache(maxsize=1024)
def n_series(F: FormalGroupBud, n: int) -> TruncatedSeries:
    """
    n-ряд [n]_F

    [0] = 0, [n+1](x) = F(x, [n](x)) при n >= 0, [-n] = [n] o iota.
    """
    ring, N = F.ring, F.bud_order
    if n < 0:
        return substitute(n_series(F, -n), [formal_inverse(F)])
    if n == 0:
        return zero_series(ring, 1, N)
    x = variable(ring, 1, N, 0)
    return substitute(F.series, [x, n_series(F, n - 1)])


def formal_sum(F: FormalGroupBud, fs: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Формальная сумма f_1 +_F f_2 +_F ... (левая свертка)"""
    if not fs:
        raise InvalidArgumentError("Формальная сумма пустого набора не определена")
    accumulator = fs[0]
    for f in fs:
        if f.shape() != (F.ring, fs[0].num_vars, F.bud_order):
            raise ShapeMismatchError(
                f"Слагаемые формальной суммы должны иметь кольцо {F.ring} и точность {F.bud_order}")
    for f in fs[1:]:
        accumulator = substitute(F.series, [accumulator, f])
    return accumulator


# --- строгие изоморфизмы ---

def compose_isos(phi: StrictIso, psi: StrictIso) -> StrictIso:
    """phi o psi"""
    if phi.series.shape() != psi.series.shape():
        raise ShapeMismatchError("Композиция изоморфизмов разной точности")
    return StrictIso(substitute(phi.series, [psi.series]))


def invert_iso(phi: StrictIso) -> StrictIso:
    return StrictIso(compositional_inverse(phi.series))


def iso_group(phi: StrictIso, psi: Optional[StrictIso], op: str) -> StrictIso:
    """Групповая операция в Phi(B): op из {"compose", "invert"} (для invert psi игнорируется)"""
    if op == "compose":
        if psi is None:
            raise InvalidArgumentError("Для композиции нужен второй изоморфизм")
        return compose_isos(phi, psi)
    if op == "invert":
        return invert_iso(phi)
    raise InvalidArgumentError(f"Неизвестная операция: {op!r}")


def truncate_iso(phi: StrictIso, k: int) -> StrictIso:
    """Образ phi при Phi(B) -> Phi_k(B)"""
    return StrictIso(truncate(phi.series, k))


def kernel_iso(b: RingElement, k: int, N: int) -> StrictIso:
    """x + b x^k - элемент ядра Phi_k(B) -> Phi_{k-1}(B), отвечающий b"""
    if not 2 <= k <= N:
        raise InvalidArgumentError(f"Степень {k} вне диапазона 2..{N}")
    return StrictIso(TruncatedSeries(b.ring, 1, N, {(1,): 1, (k,): b}))


def conjugate(F: FormalGroupBud, phi: StrictIso) -> FormalGroupBud:
    """F^phi(x, y) = phi(F(phi^-1(x), phi^-1(y)))"""
    if phi.series.shape() != (F.ring, 1, F.bud_order):
        raise ShapeMismatchError(
            f"Изоморфизм точности {phi.precision} над {phi.ring} не подходит к бутону "
            f"порядка {F.bud_order} над {F.ring}")
    ring, N = F.ring, F.bud_order
    inverse = compositional_inverse(phi.series)
    x, y = (variable(ring, 2, N, i) for i in range(2))
    inner = substitute(F.series, [substitute(inverse, [x]), substitute(inverse, [y])])
    return _certify(substitute(phi.series, [inner]), "Сопряжение")


# --- башня бутонов ---

def truncate_bud(F: FormalGroupBud, k: int) -> FormalGroupBud:
    if not 1 <= k < F.bud_order:
        raise InvalidArgumentError(f"Порядок усечения {k} вне диапазона 1..{F.bud_order - 1}")
    return _certify(truncate(F.series, k), "Усечение бутона")


def is_unique_one_bud(F: FormalGroupBud) -> bool:
    """Любой бутон усекается до x + y в порядке 1"""
    one_bud = F.series if F.bud_order == 1 else truncate(F.series, 1)
    return one_bud == TruncatedSeries(F.ring, 2, 1, {(1, 0): 1, (0, 1): 1})


def add_cocycle(F: FormalGroupBud, c: SymCocycle) -> FormalGroupBud:
    """F + c: новый k-бутон с тем же (k-1)-бутоном"""
    if c.k != F.bud_order:
        raise DegreeMismatchError(f"Степень коцикла {c.k} не равна порядку бутона {F.bud_order}")
    if c.ring != F.ring:
        raise ShapeMismatchError(f"Коцикл над {c.ring}, бутон над {F.ring}")
    return validate_bud(series_add(F.series, c.series))


def difference_cocycle(F: FormalGroupBud, G: FormalGroupBud) -> SymCocycle:
    """c = F - G для k-бутонов с общим (k-1)-бутоном"""
    if F.bud_order != G.bud_order or F.ring != G.ring:
        raise BudMismatchError("Бутоны разных порядков или над разными кольцами")
    k = F.bud_order
    if k < 2:
        raise DegreeMismatchError("Разность определена для бутонов порядка >= 2")
    if truncate(F.series, k - 1) != truncate(G.series, k - 1):
        raise BudMismatchError(f"У бутонов разные {k - 1}-бутоны")
    return make_cocycle(series_sub(F.series, G.series), k)


def bud_isomorphism_step(F: FormalGroupBud, b: RingElement) -> FormalGroupBud:
    """
    Сопряжение k-бутона изоморфизмом x + b x^k

    По модулю степени k+1 phi^-1(x) = x - b x^k, поэтому
        F^(x + b x^k) = F - b [x^k + y^k - (x+y)^k] = F + theta(-b);
    равенство проверяется, и сопряженный бутон возвращается.
    """
    k = F.bud_order
    if k < 2:
        raise InvalidArgumentError("Шаг изоморфизма определен для бутонов порядка >= 2")
    conjugated = conjugate(F, kernel_iso(b, k, k))
    expected = add_cocycle(F, principal_cocycle(-b, k))
    if conjugated != expected:
        raise InternalConsistencyError(
            f"F^(x + b x^{k}) != F + theta(-b)",
            {"conjugated": conjugated.series.to_text(), "expected": expected.series.to_text()})
    return conjugated


# --- высота и логарифм ---

def height(F: FormalGroupBud, bound: int) -> HeightResult:
    """
    Высота бутона над F_p-алгеброй: [p]_F = u x^(p^h) + ...

    Raises:
        WrongRingError: характеристика кольца не простая
        InvalidFGLError: младшая степень [p]_F не является степенью p
    """
    p = characteristic_prime(F.ring)
    if p is None:
        raise WrongRingError(f"Высота определена только над Z/p, получено кольцо {F.ring}")
    if not 1 <= bound <= F.bud_order:
        raise InvalidArgumentError(f"Граница {bound} должна быть в диапазоне 1..{F.bud_order}")
    p_series = n_series(F, p)
    low = [(total_degree(e), e) for e, _ in p_series.items() if total_degree(e) <= bound]
    if not low:
        return HeightResult.at_least(bound)
    degree = min(low)[0]
    h, power = 0, 1
    while power < degree:
        power *= p
        h += 1
    if power != degree or h < 1:
        raise InvalidFGLError(
            f"Младшая степень [{p}]_F равна {degree}, а не степени {p}", {"degree": degree})
    return HeightResult.finite_height(h, p_series.coefficient((degree,)))


def logarithm(F: FormalGroupBud) -> StrictIso:
    """
    Логарифм l: строгий изоморфизм из F в аддитивный закон

    l(x) = integral of 1 / (dF/dy)(x, 0); постусловие F^l = x + y проверяется.

    Raises:
        NeedsQAlgebraError: в кольце не выполнимо деление на степень
    """
    ring, N = F.ring, F.bud_order
    if N == 1:
        return StrictIso.identity(ring, 1)
    _, higher = partial_derivative(F.series, 1)
    # higher(x, 0) - ряд точности N-1 от одной переменной
    x = variable(ring, 1, N - 1, 0)
    restricted = substitute(higher, [x, zero_series(ring, 1, N - 1)])
    reciprocal = reciprocal_one_plus(restricted)
    try:
        tail = integrate_univariate(reciprocal)
    except NotDivisibleError as e:
        raise NeedsQAlgebraError(
            f"Логарифм требует Q-алгебры: {e.message}", e.details) from e
    log_series = series_add(variable(ring, 1, N, 0), tail)
    result = StrictIso(log_series)
    if conjugate(F, result).series != additive_fgl(ring, N).series:
        raise InternalConsistencyError("Сопряжение логарифмом не дало аддитивный закон")
    logger.debug(f"Логарифм вычислен: {log_series.to_text()}")
    return result


# --- случайные объекты для проверок ---

def random_strict_iso(ring: RingDescriptor, N: int, rng: random.Random,
                      coefficient_range=(-2, 2)) -> StrictIso:
    coefficients = [1] + [rng.randint(*coefficient_range) for _ in range(N - 1)]
    return StrictIso.from_coefficients(ring, N, coefficients)


def random_bud(ring: RingDescriptor, N: int, rng: random.Random, steps: int = 3) -> FormalGroupBud:
    """
    Случайный бутон порядка N: встроенный закон, сопряженный случайным
    строгим изоморфизмом, к которому несколько раз добавляется кратное
    универсального коцикла степени N
    """
    F = conjugate(builtin_fgl(rng.choice(["additive", "multiplicative"]), ring, N),
                  random_strict_iso(ring, N, rng))
    if N < 2:
        return F
    universal = universal_cocycle(N, ring)
    for _ in range(steps):
        multiplier = ring.element(rng.randint(-3, 3))
        F = add_cocycle(F, SymCocycle(N, ring, scalar_mul(multiplier, universal.series)))
    return F
