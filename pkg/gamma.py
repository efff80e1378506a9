"""
Гамма-пространства HZ, DB и D_kB на конечных точечных множествах

Точечное множество m+ = {0, 1, ..., m} с отмеченной точкой 0.
- HZ(K): свободная приведенная абелева группа на K (векторы целых чисел).
- DB(K): ряды без свободного члена от переменных x_1..x_m (переменная i
  отвечает элементу i); D_kB(K) - то же по модулю степени k+1.

Координаты смэш-произведения фиксированы: пара (i, j) в K ^ L, |L| = n,
получает номер (i-1)*n + j. При таком соглашении ассоциатор и униторы
смэш-произведения действуют на номерах тождественно.
"""

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, Sequence, Tuple

from algebra_constants import AlgebraConstants
from algebra_errors import (
    InternalConsistencyError,
    InvalidArgumentError,
    ShapeMismatchError,
    WrongRingError,
)
from check_report import CheckIssue, CheckReport
from coeff_rings import RingDescriptor, RingElement, characteristic_prime
from fgl import (
    FormalGroupBud,
    HeightResult,
    StrictIso,
    conjugate,
    formal_sum,
    height,
    n_series,
    random_strict_iso,
)
from logger_config import check_logger as logger
from tpseries import (
    MultiIndex,
    TruncatedSeries,
    compositional_inverse,
    is_linear,
    substitute,
    truncate,
    variable,
    zero_series,
)


# --- точечные множества и отображения ---

@dataclass(frozen=True)
class PointedSet:
    """m+ = {0, 1, ..., m}"""
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise InvalidArgumentError(f"Размер точечного множества должен быть >= 0: {self.size}")

    def elements(self) -> range:
        return range(1, self.size + 1)


@dataclass(frozen=True)
class PointedMap:
    """Отображение K -> L, сохраняющее отмеченную точку; images[i-1] - образ i (0 допустим)"""
    source: PointedSet
    target: PointedSet
    images: Tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise ShapeMismatchError(
                f"Отображение из {self.source.size}+ задано {len(self.images)} образами")
        for image in self.images:
            if not 0 <= image <= self.target.size:
                raise ShapeMismatchError(f"Образ {image} вне {self.target.size}+")

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        return self.images[i - 1]

    @classmethod
    def identity(cls, K: PointedSet) -> "PointedMap":
        return cls(K, K, tuple(K.elements()))


def fold_map(m: int) -> PointedMap:
    """Складывающее отображение m+ -> 1+"""
    return PointedMap(PointedSet(m), PointedSet(1), tuple([1] * m))


@dataclass(frozen=True)
class SmashProduct:
    """K ^ L с нумерацией (i, j) -> (i-1)*n + j"""
    left: PointedSet
    right: PointedSet

    @property
    def result(self) -> PointedSet:
        return PointedSet(self.left.size * self.right.size)

    def index(self, i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        return (i - 1) * self.right.size + j

    def split(self, index: int) -> Tuple[int, int]:
        if index == 0:
            return 0, 0
        return (index - 1) // self.right.size + 1, (index - 1) % self.right.size + 1


def smash(K: PointedSet, L: PointedSet) -> SmashProduct:
    return SmashProduct(K, L)


def smash_maps(alpha: PointedMap, beta: PointedMap) -> PointedMap:
    """alpha ^ beta: K ^ L -> K' ^ L'"""
    source = smash(alpha.source, beta.source)
    target = smash(alpha.target, beta.target)
    images = []
    for index in source.result.elements():
        i, j = source.split(index)
        images.append(target.index(alpha(i), beta(j)))
    return PointedMap(source.result, target.result, tuple(images))


# --- HZ ---

@dataclass(frozen=True)
class HZElement:
    """Элемент HZ(K) = сумма a_i * i"""
    pointed_set: PointedSet
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.pointed_set.size:
            raise ShapeMismatchError(
                f"Элемент HZ({self.pointed_set.size}+) задан {len(self.coefficients)} коэффициентами")

    @classmethod
    def basis(cls, K: PointedSet, i: int) -> "HZElement":
        if i not in K.elements():
            raise InvalidArgumentError(f"Элемент {i} не лежит в {K.size}+")
        return cls(K, tuple(1 if j == i else 0 for j in K.elements()))

    @classmethod
    def parse(cls, text: str) -> "HZElement":
        """Разбирает строку вида "1,1" """
        text = text.strip()
        try:
            coefficients = tuple(int(part) for part in text.split(",")) if text else ()
        except ValueError:
            raise InvalidArgumentError(f"Некорректный элемент HZ: {text!r}")
        return cls(PointedSet(len(coefficients)), coefficients)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.coefficients)


def hz_map(alpha: PointedMap, a: HZElement) -> HZElement:
    """Коэффициенты суммируются по прообразам; попавшие в 0 отбрасываются"""
    if a.pointed_set != alpha.source:
        raise ShapeMismatchError("Элемент HZ не лежит в области определения отображения")
    out = [0] * alpha.target.size
    for i, value in zip(alpha.source.elements(), a.coefficients):
        image = alpha(i)
        if image:
            out[image - 1] += value
    return HZElement(alpha.target, tuple(out))


def hz_mul(a: HZElement, b: HZElement) -> HZElement:
    """(sum a_k k) ^ (sum b_l l) -> sum a_k b_l (k ^ l)"""
    product = smash(a.pointed_set, b.pointed_set)
    out = [0] * product.result.size
    for i, ai in zip(a.pointed_set.elements(), a.coefficients):
        for j, bj in zip(b.pointed_set.elements(), b.coefficients):
            out[product.index(i, j) - 1] = ai * bj
    return HZElement(product.result, tuple(out))


# --- DB ---

@dataclass(frozen=True)
class DBElement:
    """Элемент DB(K) (или D_NB(K)): ряд от |K| переменных"""
    pointed_set: PointedSet
    series: TruncatedSeries

    def __post_init__(self):
        if self.series.num_vars != self.pointed_set.size:
            raise ShapeMismatchError(
                f"Ряд от {self.series.num_vars} переменных не лежит в DB({self.pointed_set.size}+)")

    @property
    def precision(self) -> int:
        return self.series.precision

    @property
    def ring(self) -> RingDescriptor:
        return self.series.ring


def db_zero(K: PointedSet, ring: RingDescriptor, N: int) -> DBElement:
    return DBElement(K, zero_series(ring, K.size, N))


def db_unit(K: PointedSet, i: int, ring: RingDescriptor, N: int) -> DBElement:
    """Единица eta: элемент i переходит в переменную x_i"""
    if i not in K.elements():
        raise InvalidArgumentError(f"Элемент {i} не лежит в {K.size}+")
    return DBElement(K, variable(ring, K.size, N, i - 1))


def db_map(alpha: PointedMap, f: DBElement) -> DBElement:
    """x_i -> x_alpha(i), x_i -> 0 при alpha(i) = 0"""
    if f.pointed_set != alpha.source:
        raise ShapeMismatchError("Элемент DB не лежит в области определения отображения")
    ring, N, m = f.ring, f.precision, alpha.target.size
    if alpha.source.size == 0:
        return db_zero(alpha.target, ring, N)
    images = [variable(ring, m, N, alpha(i) - 1) if alpha(i) else zero_series(ring, m, N)
              for i in alpha.source.elements()]
    return DBElement(alpha.target, substitute(f.series, images))


def db_mul(f: DBElement, g: DBElement) -> DBElement:
    """
    Умножение mu: f(k_1..k_m) ^ g(l_1..l_n) -> f(g(k_1^l_1, ..., k_1^l_n), ..., g(k_m^l_1, ..., k_m^l_n))
    """
    if (f.ring, f.precision) != (g.ring, g.precision):
        raise ShapeMismatchError("Умножаются элементы DB над разными кольцами или разной точности")
    product = smash(f.pointed_set, g.pointed_set)
    ring, N, size = f.ring, f.precision, product.result.size
    if size == 0:
        return db_zero(product.result, ring, N)
    inner = []
    for i in f.pointed_set.elements():
        row = [variable(ring, size, N, product.index(i, j) - 1) for j in g.pointed_set.elements()]
        inner.append(substitute(g.series, row))
    return DBElement(product.result, substitute(f.series, inner))


def db_truncate(f: DBElement, k: int) -> DBElement:
    """DB -> D_kB"""
    return DBElement(f.pointed_set, truncate(f.series, k))


def db_conjugate(phi: StrictIso, f: DBElement) -> DBElement:
    """Действие сопряжением: phi(f(phi^-1(x_1), ..., phi^-1(x_m)))"""
    if phi.series.shape() != (f.ring, 1, f.precision):
        raise ShapeMismatchError("Изоморфизм и элемент DB имеют разную точность или кольцо")
    m, ring, N = f.pointed_set.size, f.ring, f.precision
    if m == 0:
        return f
    inverse = compositional_inverse(phi.series)
    inner = [substitute(inverse, [variable(ring, m, N, i)]) for i in range(m)]
    return DBElement(f.pointed_set, substitute(phi.series, [substitute(f.series, inner)]))


def db_linear_part(f: DBElement) -> Tuple[RingElement, ...]:
    """Линейные коэффициенты: изоморфизм D_1B(K) = HB(K)"""
    m = f.pointed_set.size
    return tuple(f.series.coefficient(tuple(1 if j == i else 0 for j in range(m))) for i in range(m))


# --- отображение F* ---

def fstar(F: FormalGroupBud, a: HZElement) -> DBElement:
    """F*(sum a_k k) = формальная сумма [a_k]_F(x_k)"""
    ring, N, m = F.ring, F.bud_order, a.pointed_set.size
    summands = [substitute(n_series(F, value), [variable(ring, m, N, i)])
                for i, value in enumerate(a.coefficients) if value != 0]
    if not summands:
        return db_zero(a.pointed_set, ring, N)
    return DBElement(a.pointed_set, formal_sum(F, summands))


# --- разложение по симметрическим степеням ---

@dataclass(frozen=True)
class SymmetricPowerSlot:
    """Компонента степени k: свободный B-модуль на мультимножествах размера k"""
    degree: int
    basis: Tuple[Tuple[int, ...], ...]
    coefficients: Tuple[RingElement, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _multiset_to_exponents(multiset: Sequence[int], m: int) -> MultiIndex:
    exponents = [0] * m
    for element in multiset:
        exponents[element - 1] += 1
    return tuple(exponents)


def homogeneous_decomposition(f: DBElement) -> Dict[int, SymmetricPowerSlot]:
    """Однородные части f, индексированные мультимножествами элементов K"""
    m, ring = f.pointed_set.size, f.ring
    slots: Dict[int, SymmetricPowerSlot] = {}
    for k in range(1, f.precision + 1):
        basis = tuple(itertools.combinations_with_replacement(range(1, m + 1), k))
        if len(basis) != comb(m + k - 1, k):
            raise InternalConsistencyError(
                f"Мультимножеств размера {k} в {m}+: {len(basis)}, а C(m+k-1, k) = {comb(m + k - 1, k)}")
        coefficients = tuple(f.series.coefficient(_multiset_to_exponents(s, m)) for s in basis)
        slots[k] = SymmetricPowerSlot(k, basis, coefficients)
    monomials = len(f.series)
    covered = sum(1 for slot in slots.values() for c in slot.coefficients if c)
    if monomials != covered:
        raise InternalConsistencyError("Мономы ряда не покрыты базисами симметрических степеней")
    return slots


# --- случайные элементы ---

def random_pointed_set(rng: random.Random, max_size: int, minimum: int = 0) -> PointedSet:
    return PointedSet(rng.randint(minimum, max(minimum, max_size)))


def random_pointed_map(rng: random.Random, source: PointedSet, max_size: int) -> PointedMap:
    target = random_pointed_set(rng, max_size)
    return PointedMap(source, target, tuple(rng.randint(0, target.size) for _ in source.elements()))


def random_db_element(rng: random.Random, ring: RingDescriptor, K: PointedSet, N: int,
                      max_terms: int = AlgebraConstants.RANDOM_MAX_TERMS) -> DBElement:
    terms = {}
    if K.size:
        for _ in range(rng.randint(1, max_terms)):
            degree = rng.randint(1, N)
            exponents = [0] * K.size
            for _ in range(degree):
                exponents[rng.randrange(K.size)] += 1
            terms[tuple(exponents)] = rng.randint(*AlgebraConstants.RANDOM_COEFFICIENT_RANGE)
    return DBElement(K, TruncatedSeries(ring, K.size, N, terms))


def random_hz_element(rng: random.Random, K: PointedSet) -> HZElement:
    return HZElement(K, tuple(rng.randint(*AlgebraConstants.RANDOM_HZ_RANGE) for _ in K.elements()))


# --- проверки ---

def _compare(report: CheckReport, check: str, trial: int, expected: DBElement, actual: DBElement) -> None:
    if expected == actual:
        report.record_pass(check)
        return
    logger.warning(f"⚠️  Испытание {trial}: нарушено {check}")
    report.add_issue(CheckIssue(
        check=check,
        trial=trial,
        description=f"Тождество {check} не выполнено",
        expected=expected.series.to_text(),
        actual=actual.series.to_text(),
    ))


Multiplication = Callable[[DBElement, DBElement], DBElement]


def check_gammaring_axioms(ring: RingDescriptor, N: int, max_set_size: int, trials: int, seed: int,
                           mul: Multiplication = db_mul) -> CheckReport:
    """
    Ассоциативность и унитальность mu, естественность mu по обоим аргументам

    Args:
        mul: умножение (подменяется в тестах самой проверки)
    """
    rng = random.Random(seed)
    report = CheckReport("gammaring", seed, trials)
    one = PointedSet(1)
    logger.info(f"🔍 Проверка аксиом Гамма-кольца: {ring}, N={N}, испытаний {trials}, seed={seed}")

    for trial in range(trials):
        report.tracker.increment("trials")
        K, L, M = (random_pointed_set(rng, max_set_size) for _ in range(3))
        f, g, h = (random_db_element(rng, ring, S, N) for S in (K, L, M))

        _compare(report, "associativity", trial, mul(mul(f, g), h), mul(f, mul(g, h)))

        eta = db_unit(one, 1, ring, N)
        _compare(report, "unit-left", trial, g, mul(eta, g))
        _compare(report, "unit-right", trial, f, mul(f, eta))

        alpha = random_pointed_map(rng, K, max_set_size)
        beta = random_pointed_map(rng, L, max_set_size)
        _compare(report, "naturality", trial,
                 db_map(smash_maps(alpha, beta), mul(f, g)),
                 mul(db_map(alpha, f), db_map(beta, g)))

    report.sort_issues()
    logger.info(f"{'✅' if report.passed else '❌'} Аксиомы Гамма-кольца: нарушений {len(report.issues)}")
    return report


def check_fstar_homomorphism(F: FormalGroupBud, max_set_size: int, trials: int, seed: int) -> CheckReport:
    """
    F*: HZ -> DB - отображение Гамма-колец, эквивариантное относительно Phi(B)

    Проверяются: (i) единица, (ii) мультипликативность, (iii) естественность,
    (iv) (F^phi)* = phi F* phi^-1, (v) [n] o [m] = [nm] на 1+.
    """
    rng = random.Random(seed)
    ring, N = F.ring, F.bud_order
    report = CheckReport("fstar", seed, trials)
    logger.info(f"🔍 Проверка гомоморфизма F*: {ring}, N={N}, испытаний {trials}, seed={seed}")

    # считаются только образы самого F: F^phi нелинеен и для аддитивного F
    def image(a: HZElement) -> DBElement:
        result = fstar(F, a)
        if not is_linear(result.series):
            report.tracker.increment("nonlinear_outputs")
        return result

    for trial in range(trials):
        report.tracker.increment("trials")
        K = random_pointed_set(rng, max_set_size, minimum=1)
        i = rng.randint(1, K.size)
        _compare(report, "unit", trial, db_unit(K, i, ring, N), image(HZElement.basis(K, i)))

        L = random_pointed_set(rng, max_set_size)
        a, b = random_hz_element(rng, K), random_hz_element(rng, L)
        _compare(report, "multiplicativity", trial,
                 db_mul(image(a), image(b)), image(hz_mul(a, b)))

        alpha = random_pointed_map(rng, K, max_set_size)
        _compare(report, "naturality", trial,
                 db_map(alpha, image(a)), image(hz_map(alpha, a)))

        phi = random_strict_iso(ring, N, rng)
        _compare(report, "equivariance", trial,
                 db_conjugate(phi, image(a)), fstar(conjugate(F, phi), a))

        n, m = (rng.randint(*AlgebraConstants.RANDOM_NSERIES_RANGE) for _ in range(2))
        one = PointedSet(1)
        _compare(report, "n-series-monoid", trial,
                 DBElement(one, n_series(F, n * m)),
                 DBElement(one, substitute(n_series(F, n), [n_series(F, m)])))

    report.sort_issues()
    logger.info(f"{'✅' if report.passed else '❌'} Гомоморфизм F*: нарушений {len(report.issues)}")
    return report


# --- высота и F* ---

def height_factorization_check(F: FormalGroupBud, h: int) -> bool:
    """
    F*(p x) = [p]_F(x) обращается в ноль по модулю степени p^h

    Ответ сверяется с height(F, N): тождество верно тогда и только тогда,
    когда высота не меньше h.
    """
    p = characteristic_prime(F.ring)
    if p is None:
        raise WrongRingError(f"Нужна простая характеристика, получено кольцо {F.ring}")
    if h < 1:
        raise InvalidArgumentError(f"h должно быть >= 1: {h}")
    N = F.bud_order
    if N < p ** h:
        raise InvalidArgumentError(f"Точность {N} меньше p^h = {p ** h}")
    image = fstar(F, HZElement(PointedSet(1), (p,)))
    vanishes = db_truncate(image, p ** h - 1).series.is_zero

    result: HeightResult = height(F, N)
    expected = (not result.finite) or result.h >= h
    if vanishes != expected:
        raise InternalConsistencyError(
            f"F*(p x) mod степени {p ** h} {'равно' if vanishes else 'не равно'} нулю, "
            f"а высота {result.h if result.finite else f'>= {result.bound}'}")
    return vanishes
