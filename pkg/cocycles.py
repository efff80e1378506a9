"""
Симметрические 2-коциклы степени k

Коцикл - однородный многочлен c(x, y) степени k с
    c(x, y) = c(y, x),
    c(x, y) + c(x + y, z) = c(x, y + z) + c(y, z).
Коэффициенты записываются вектором (a_1, ..., a_{k-1}), где a_i -
коэффициент при x^i y^(k-i); a_0 = a_k = 0 вынуждены условиями.
"""

import itertools
from dataclasses import dataclass
from functools import reduce
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from algebra_errors import (
    ClassificationMismatchError,
    InvalidArgumentError,
    ShapeMismatchError,
    TooLargeError,
)
from coeff_rings import RawValue, RingDescriptor, RingElement, enumerate_elements
from logger_config import algebra_logger, check_logger
from settings import get_settings
from tpseries import (
    TruncatedSeries,
    series_add,
    substitute,
    total_degree,
    truncate,
    variable,
)

CoefficientVector = Tuple[RawValue, ...]


@dataclass(frozen=True)
class SymCocycle:
    """Сертифицированный симметрический 2-коцикл (строится через make_cocycle)"""
    k: int
    ring: RingDescriptor
    series: TruncatedSeries

    def coefficient_vector(self) -> CoefficientVector:
        return coefficient_vector(self.series, self.k)

    @property
    def is_zero(self) -> bool:
        return self.series.is_zero


@dataclass(frozen=True)
class CocycleCheck:
    """Результат проверки кандидата в коциклы"""
    ok: bool
    failure: Optional[str] = None
    monomial: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class GroupoidInvariants:
    """Инварианты группоида коциклов: число компонент и порядок стабилизатора"""
    pi0_size: int
    stabilizer_size: int
    cocycle_count: int
    ring_size: int


# --- вспомогательные ---

def _require_degree(k: int) -> None:
    if k < 2:
        raise InvalidArgumentError(f"Степень коцикла должна быть >= 2, получено: {k}")


def prime_power_base(k: int) -> Optional[int]:
    """Простое p, если k = p^h с h >= 1; иначе None"""
    if k < 2:
        return None
    p = 2
    while p * p <= k:
        if k % p == 0:
            break
        p += 1
    else:
        return k
    while k % p == 0:
        k //= p
    return p if k == 1 else None


def coefficient_vector(series: TruncatedSeries, k: int) -> CoefficientVector:
    return tuple(series.raw_coefficient((i, k - i)) for i in range(1, k))


def cocycle_series(ring: RingDescriptor, k: int, vector: Sequence[RawValue]) -> TruncatedSeries:
    if len(vector) != k - 1:
        raise ShapeMismatchError(f"Нужно {k - 1} коэффициентов, получено {len(vector)}")
    return TruncatedSeries(ring, 2, k, {(i, k - i): v for i, v in enumerate(vector, start=1)})


# --- проверка ---

def is_symmetric_cocycle(c: TruncatedSeries, k: int) -> CocycleCheck:
    """
    Проверяет симметрию и тождество коцикла в трех переменных

    Raises:
        ShapeMismatchError: ряд не однороден степени k от двух переменных
    """
    _require_degree(k)
    if c.num_vars != 2 or c.precision < k:
        raise ShapeMismatchError(
            f"Ожидался ряд от 2 переменных точности >= {k}, получено vars={c.num_vars}, N={c.precision}")
    for exponents, _ in c.items():
        if total_degree(exponents) != k:
            raise ShapeMismatchError(
                f"Моном {exponents} имеет степень {total_degree(exponents)}, ожидалась {k}")
    c = truncate(c, k)

    for (i, j), value in c.items():
        if c.raw_coefficient((j, i)) != value:
            return CocycleCheck(False, "symmetry", (i, j))

    ring = c.ring
    x, y, z = (variable(ring, 3, k, i) for i in range(3))
    lhs = series_add(substitute(c, [x, y]), substitute(c, [series_add(x, y), z]))
    rhs = series_add(substitute(c, [x, series_add(y, z)]), substitute(c, [y, z]))
    if lhs != rhs:
        difference = dict(lhs.raw_terms())
        for e, v in rhs.items():
            difference[e] = ring.normalize(difference.get(e, 0) - v)
        bad = sorted(e for e, v in difference.items() if v != 0)
        return CocycleCheck(False, "cocycle-identity", bad[0] if bad else None)
    return CocycleCheck(True)


def make_cocycle(series: TruncatedSeries, k: int) -> SymCocycle:
    """Сертифицирует ряд как симметрический 2-коцикл степени k"""
    check = is_symmetric_cocycle(series, k)
    if not check:
        raise ShapeMismatchError(
            f"Ряд не является коциклом: нарушено {check.failure} в мономе {check.monomial}",
            {"failure": check.failure, "monomial": list(check.monomial or ())})
    return SymCocycle(k, series.ring, truncate(series, k))


def cocycle_from_vector(ring: RingDescriptor, k: int, vector: Sequence[RawValue]) -> SymCocycle:
    return make_cocycle(cocycle_series(ring, k, vector), k)


def zero_cocycle(ring: RingDescriptor, k: int) -> SymCocycle:
    _require_degree(k)
    return SymCocycle(k, ring, TruncatedSeries(ring, 2, k))


# --- коцикл Лазара ---

def binomial_gcd(k: int) -> int:
    """d_k = НОД биномиальных коэффициентов C(k, i), 1 <= i <= k-1"""
    _require_degree(k)
    return reduce(gcd, (comb(k, i) for i in range(1, k)))


def universal_cocycle(k: int, ring: RingDescriptor) -> SymCocycle:
    """Универсальный коцикл c_k = (x^k + y^k - (x+y)^k) / d_k"""
    d = binomial_gcd(k)
    vector = [ring.from_int(-comb(k, i) // d) for i in range(1, k)]
    return cocycle_from_vector(ring, k, vector)


def principal_cocycle(b: RingElement, k: int) -> SymCocycle:
    """Главный коцикл theta(b) = b * (x^k + y^k - (x+y)^k)"""
    _require_degree(k)
    ring = b.ring
    vector = [ring.normalize(-comb(k, i) * b.value) for i in range(1, k)]
    return cocycle_from_vector(ring, k, vector)


def add_cocycles(c1: SymCocycle, c2: SymCocycle) -> SymCocycle:
    if (c1.k, c1.ring) != (c2.k, c2.ring):
        raise ShapeMismatchError("Складываются коциклы разных степеней или над разными кольцами")
    return SymCocycle(c1.k, c1.ring, series_add(c1.series, c2.series))


# --- классификация перебором ---

def _multiples_of_universal(ring: RingDescriptor, k: int) -> Dict[CoefficientVector, RawValue]:
    universal = universal_cocycle(k, ring).coefficient_vector()
    multiples: Dict[CoefficientVector, RawValue] = {}
    for b in enumerate_elements(ring):
        vector = tuple(ring.normalize(b.value * a) for a in universal)
        multiples.setdefault(vector, b.value)
    return multiples


def classify_cocycles(ring: RingDescriptor, k: int, budget: Optional[int] = None) -> List[SymCocycle]:
    """
    Все симметрические 2-коциклы степени k над конечным кольцом

    Перебираются свободные координаты a_1..a_{floor(k/2)} (a_{k-i} = a_i),
    каждый кандидат проверяется тождеством коцикла. Затем результат
    сравнивается с множеством {b * c_k : b in B}.

    Raises:
        TooLargeError: пространство перебора больше бюджета
        ClassificationMismatchError: найден коцикл вне {b * c_k} или наоборот
    """
    _require_degree(k)
    elements = enumerate_elements(ring)
    if budget is None:
        budget = get_settings().enumeration_budget
    free = k // 2
    search_space = len(elements) ** free
    if search_space > budget:
        raise TooLargeError(
            f"Пространство перебора {search_space} превышает бюджет {budget}",
            {"search_space": search_space, "budget": budget})

    check_logger.info(f"🔍 Перебор коциклов: кольцо {ring}, k={k}, кандидатов {search_space}")
    found: List[CoefficientVector] = []
    for free_values in itertools.product([e.value for e in elements], repeat=free):
        vector = [0] * (k - 1)
        for i, value in enumerate(free_values, start=1):
            vector[i - 1] = value
            vector[k - i - 1] = value
        series = cocycle_series(ring, k, vector)
        if is_symmetric_cocycle(series, k):
            found.append(coefficient_vector(series, k))
    found.sort()

    expected = _multiples_of_universal(ring, k)
    found_set = set(found)
    extra = [v for v in found if v not in expected]
    missing = [v for v in expected if v not in found_set]
    if extra or missing:
        counterexample = (extra or missing)[0]
        check_logger.error(f"❌ Классификация не совпала с кратными c_{k}: {counterexample}")
        raise ClassificationMismatchError(
            f"Коцикл {counterexample} нарушает классификацию Лазара",
            {"counterexample": [ring.format_raw(v) for v in counterexample],
             "kind": "extra" if extra else "missing"})

    check_logger.info(f"✅ Найдено коциклов: {len(found)} (все кратны c_{k})")
    return [SymCocycle(k, ring, cocycle_series(ring, k, v)) for v in found]


def groupoid_invariants(ring: RingDescriptor, k: int, budget: Optional[int] = None,
                        cocycles: Optional[List[SymCocycle]] = None) -> GroupoidInvariants:
    """
    pi_0 и фундаментальная группа группоида коциклов

    pi0 = |коциклы| / |образ theta|, стабилизатор = |ker theta| = |{b : d_k b = 0}|.
    Сверяется с замкнутой формой: для k = p^h pi0 = |B/pB| и
    стабилизатор = |{b : pb = 0}|; иначе pi0 = 1.

    Args:
        cocycles: уже найденный список коциклов (иначе выполняется перебор)
    """
    if cocycles is None:
        cocycles = classify_cocycles(ring, k, budget)
    elements = enumerate_elements(ring)
    image = set()
    kernel = 0
    for b in elements:
        vector = principal_cocycle(b, k).coefficient_vector()
        image.add(vector)
        if all(v == 0 for v in vector):
            kernel += 1
    pi0 = len(cocycles) // len(image)
    invariants = GroupoidInvariants(pi0, kernel, len(cocycles), len(elements))

    d = binomial_gcd(k)
    d_kernel = sum(1 for b in elements if ring.normalize(d * b.value) == 0)
    problems = []
    if len(cocycles) % len(image) != 0:
        problems.append("образ theta не делит число коциклов")
    if d_kernel != kernel:
        problems.append(f"|ker theta| = {kernel}, а |{{b : d_k b = 0}}| = {d_kernel}")
    if pi0 * (len(elements) // kernel) != len(cocycles):
        problems.append("нарушено равенство орбит и стабилизаторов")
    p = prime_power_base(k)
    if p is not None:
        p_multiples = len({ring.normalize(p * b.value) for b in elements})
        p_torsion = sum(1 for b in elements if ring.normalize(p * b.value) == 0)
        if pi0 != len(elements) // p_multiples:
            problems.append(f"pi0 = {pi0}, а |B/pB| = {len(elements) // p_multiples}")
        if kernel != p_torsion:
            problems.append(f"стабилизатор {kernel}, а |{{b : pb = 0}}| = {p_torsion}")
    elif pi0 != 1:
        problems.append(f"k = {k} не степень простого, но pi0 = {pi0}")
    if problems:
        raise ClassificationMismatchError(
            "; ".join(problems), {"pi0": pi0, "stabilizer": kernel})

    algebra_logger.info(f"📊 Группоид коциклов {ring}, k={k}: pi0={pi0}, стабилизатор={kernel}")
    return invariants


def count_bud_extensions(ring: RingDescriptor, k: int, budget: Optional[int] = None) -> int:
    """Число k-бутонов, продолжающих фиксированный (k-1)-бутон (= число коциклов степени k)"""
    return len(classify_cocycles(ring, k, budget))
