"""
Полиномиальные функторы S^k, Lambda^2, I (x) I на свободных абелевых группах Z^r
и гомологии целочисленных цепных комплексов через нормальную форму Смита

Матрицы - numpy-массивы с dtype=object (произвольная точность). Базисы
функторов упорядочены градуированно-лексикографически, индексы с нуля.
"""

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra_errors import (
    InsufficientTruncationError,
    InternalConsistencyError,
    InvalidArgumentError,
    NotAComplexError,
    ShapeMismatchError,
)
from coeff_rings import extended_gcd
from cocycles import binomial_gcd
from logger_config import algebra_logger as logger
from tpseries import MultiIndex, grlex_key

SYMMETRIC_POWER = "sym"
EXTERIOR_SQUARE = "lambda2"
TENSOR_SQUARE = "tensor2"


# --- матрицы ---

def _zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def _identity(n: int) -> np.ndarray:
    matrix = _zeros(n, n)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatchError(f"Нельзя перемножить матрицы {a.shape} и {b.shape}")
    if a.shape[1] == 0:
        return _zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def to_int_matrix(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> np.ndarray:
    """Целочисленная матрица из списка строк (cols нужен для матриц без строк)"""
    if not rows:
        return _zeros(0, cols or 0)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ShapeMismatchError("Строки матрицы разной длины")
    matrix = _zeros(len(rows), width)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            matrix[i, j] = int(value)
    return matrix


def _is_zero(matrix: np.ndarray) -> bool:
    return all(value == 0 for value in matrix.flat)


# --- функторы ---

@dataclass(frozen=True)
class FunctorValue:
    """Значение полиномиального функтора на Z^r с выбранным базисом"""
    functor_tag: str
    rank: int
    basis: Tuple[tuple, ...]
    degree: Optional[int] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, element: tuple) -> int:
        return self.basis.index(element)


def _require_rank(r: int) -> None:
    if r < 0:
        raise InvalidArgumentError(f"Ранг должен быть >= 0: {r}")


def symmetric_power(k: int, r: int) -> FunctorValue:
    """S^k(Z^r): мономы степени k от r переменных"""
    _require_rank(r)
    if k < 0:
        raise InvalidArgumentError(f"Степень должна быть >= 0: {k}")
    basis = []
    for multiset in itertools.combinations_with_replacement(range(r), k):
        exponents = [0] * r
        for i in multiset:
            exponents[i] += 1
        basis.append(tuple(exponents))
    basis.sort(key=grlex_key)
    value = FunctorValue(SYMMETRIC_POWER, r, tuple(basis), k)
    if value.dimension != comb(r + k - 1, k):
        raise InternalConsistencyError(f"dim S^{k}(Z^{r}) = {value.dimension} != C(r+k-1, k)")
    return value


def exterior_square(r: int) -> FunctorValue:
    """Lambda^2(Z^r): пары i < j"""
    _require_rank(r)
    return FunctorValue(EXTERIOR_SQUARE, r, tuple(itertools.combinations(range(r), 2)), 2)


def tensor_square(r: int) -> FunctorValue:
    """Z^r (x) Z^r: упорядоченные пары"""
    _require_rank(r)
    return FunctorValue(TENSOR_SQUARE, r, tuple(itertools.product(range(r), repeat=2)), 2)


# --- нормальная форма Смита ---

@dataclass
class SmithForm:
    """U * A * V = D; обратные матрицы хранятся для проверки унимодулярности"""
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def diagonal(self) -> List[int]:
        return [int(self.D[i, i]) for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> List[int]:
        return [d for d in self.diagonal if d != 0]


class _SmithReduction:
    """Элементарные преобразования строк и столбцов с учетом U, U^-1, V, V^-1"""

    def __init__(self, A: np.ndarray):
        rows, cols = A.shape
        self.D = A.copy()
        self.U, self.U_inv = _identity(rows), _identity(rows)
        self.V, self.V_inv = _identity(cols), _identity(cols)

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        for m in (self.D, self.U):
            m[[i, j], :] = m[[j, i], :]
        self.U_inv[:, [i, j]] = self.U_inv[:, [j, i]]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for m in (self.D, self.V):
            m[:, [i, j]] = m[:, [j, i]]
        self.V_inv[[i, j], :] = self.V_inv[[j, i], :]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row_target += q * row_source"""
        self.D[target, :] = self.D[target, :] + q * self.D[source, :]
        self.U[target, :] = self.U[target, :] + q * self.U[source, :]
        self.U_inv[:, source] = self.U_inv[:, source] - q * self.U_inv[:, target]

    def add_col(self, target: int, source: int, q: int) -> None:
        """col_target += q * col_source"""
        self.D[:, target] = self.D[:, target] + q * self.D[:, source]
        self.V[:, target] = self.V[:, target] + q * self.V[:, source]
        self.V_inv[source, :] = self.V_inv[source, :] - q * self.V_inv[target, :]

    def negate_row(self, i: int) -> None:
        self.D[i, :] = -self.D[i, :]
        self.U[i, :] = -self.U[i, :]
        self.U_inv[:, i] = -self.U_inv[:, i]

    def pivot(self, t: int) -> Optional[Tuple[int, int]]:
        """Наименьший по модулю ненулевой элемент правого нижнего блока"""
        best = None
        rows, cols = self.D.shape
        for i in range(t, rows):
            for j in range(t, cols):
                value = abs(self.D[i, j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)
        return None if best is None else best[1:]


def smith_normal_form(A: np.ndarray) -> SmithForm:
    """
    Нормальная форма Смита целочисленной матрицы

    Опорный элемент - наименьший по модулю ненулевой, при равенстве
    берется меньший номер строки, затем столбца.

    Returns:
        SmithForm с U * A * V = D, d_1 | d_2 | ..., d_i >= 0
    """
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ShapeMismatchError(f"Ожидалась матрица, получен массив размерности {A.ndim}")
    reduction = _SmithReduction(A)
    D = reduction.D
    rows, cols = A.shape

    for t in range(min(rows, cols)):
        while True:
            position = reduction.pivot(t)
            if position is None:
                break
            reduction.swap_rows(t, position[0])
            reduction.swap_cols(t, position[1])
            p = D[t, t]
            for i in range(t + 1, rows):
                if D[i, t]:
                    reduction.add_row(i, t, -(D[i, t] // p))
            for j in range(t + 1, cols):
                if D[t, j]:
                    reduction.add_col(j, t, -(D[t, j] // p))
            if any(D[i, t] for i in range(t + 1, rows)) or any(D[t, j] for j in range(t + 1, cols)):
                continue
            offender = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                             if D[i, j] % p), None)
            if offender is None:
                break
            reduction.add_row(t, offender[0], 1)
        if D[t, t] < 0:
            reduction.negate_row(t)

    result = SmithForm(reduction.U, D, reduction.V, reduction.U_inv, reduction.V_inv)
    _verify_smith_form(A, result)
    return result


def _verify_smith_form(A: np.ndarray, snf: SmithForm) -> None:
    rows, cols = A.shape
    problems = []
    if not (_matmul(_matmul(snf.U, A), snf.V) == snf.D).all():
        problems.append("U * A * V != D")
    if not (_matmul(snf.U, snf.U_inv) == _identity(rows)).all():
        problems.append("U не унимодулярна")
    if not (_matmul(snf.V, snf.V_inv) == _identity(cols)).all():
        problems.append("V не унимодулярна")
    if any(snf.D[i, j] for i in range(rows) for j in range(cols) if i != j):
        problems.append("D не диагональна")
    diagonal = snf.diagonal
    for a, b in zip(diagonal, diagonal[1:]):
        if a < 0 or (a == 0 and b != 0) or (a != 0 and b % a != 0):
            problems.append(f"нарушена цепочка делимости: {a}, {b}")
            break
    if problems:
        raise InternalConsistencyError("Нормальная форма Смита: " + "; ".join(problems))


# --- цепные комплексы ---

@dataclass(frozen=True)
class AbelianGroupIso:
    """Z^free + Z/t_1 + Z/t_2 + ..., t_1 | t_2 | ..."""
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InvalidArgumentError(f"Ранг должен быть >= 0: {self.free_rank}")
        for t in self.torsion:
            if t < 2:
                raise InvalidArgumentError(f"Инвариантный множитель должен быть >= 2: {t}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InvalidArgumentError(f"Нарушена цепочка делимости: {a} не делит {b}")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ([f"Z^{self.free_rank}"] if self.free_rank else []) + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass
class IntChainComplex:
    """
    C_0 <- C_1 <- ... <- C_top; boundaries[i-1] - матрица d_i размера dims[i-1] x dims[i]
    """
    dims: List[int]
    boundaries: List[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        if not self.dims or any(d < 0 for d in self.dims):
            raise InvalidArgumentError(f"Некорректные размерности комплекса: {self.dims}")
        if len(self.boundaries) != len(self.dims) - 1:
            raise ShapeMismatchError(
                f"Для {len(self.dims)} членов нужно {len(self.dims) - 1} дифференциалов")
        for i, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.dims[i - 1], self.dims[i]):
                raise ShapeMismatchError(
                    f"d_{i} имеет форму {d.shape}, ожидалось {(self.dims[i - 1], self.dims[i])}")
        for i in range(2, self.top + 1):
            if not _is_zero(_matmul(self.boundary(i - 1), self.boundary(i))):
                raise NotAComplexError(f"d_{i - 1} * d_{i} != 0", {"degree": i})

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, i: int) -> np.ndarray:
        """d_i: C_i -> C_{i-1}; вне диапазона - нулевое отображение"""
        if 1 <= i <= self.top:
            return self.boundaries[i - 1]
        source = self.dims[i] if 0 <= i <= self.top else 0
        target = self.dims[i - 1] if 1 <= i <= self.top + 1 else 0
        return _zeros(target, source)


def homology(C: IntChainComplex, i: int) -> AbelianGroupIso:
    """H_i = ker d_i / im d_{i+1} по инвариантным множителям d_{i+1}"""
    if not 0 <= i <= C.top:
        raise InvalidArgumentError(f"Степень {i} вне диапазона 0..{C.top}")
    outgoing = smith_normal_form(C.boundary(i))
    incoming = smith_normal_form(C.boundary(i + 1))
    kernel_rank = C.dims[i] - outgoing.rank
    free = kernel_rank - incoming.rank
    if kernel_rank + outgoing.rank != C.dims[i] or free < 0:
        raise InternalConsistencyError(f"Ранги в степени {i} не согласованы")
    torsion = tuple(t for t in incoming.invariant_factors if t > 1)
    return AbelianGroupIso(free, torsion)


# --- комплекс C~ для Lambda^2 ---

def build_ctilde(r: int, top: int) -> IntChainComplex:
    """
    C~_0 = Lambda^2(Z^r), C~_i = Z^r (x) Z^r при i > 0

    d_1(x (x) y) = x ^ y; при i >= 2 d_i(x (x) y) = x (x) y + y (x) x для четных i
    и x (x) y - y (x) x для нечетных.
    """
    if r < 1 or top < 1:
        raise InvalidArgumentError(f"Нужны r >= 1 и top >= 1, получено r={r}, top={top}")
    lam, tensor = exterior_square(r), tensor_square(r)
    dims = [lam.dimension] + [tensor.dimension] * top

    d1 = _zeros(lam.dimension, tensor.dimension)
    for column, (a, b) in enumerate(tensor.basis):
        if a < b:
            d1[lam.index((a, b)), column] = 1
        elif a > b:
            d1[lam.index((b, a)), column] = -1
    boundaries = [d1]

    for i in range(2, top + 1):
        sign = 1 if i % 2 == 0 else -1
        d = _zeros(tensor.dimension, tensor.dimension)
        for column, (a, b) in enumerate(tensor.basis):
            d[column, column] += 1
            d[tensor.index((b, a)), column] += sign
        boundaries.append(d)

    logger.debug(f"C~(Z^{r}) до степени {top}: размерности {dims}")
    return IntChainComplex(dims, boundaries)


def expected_stable_lambda2(i: int, r: int) -> AbelianGroupIso:
    """(Z/2)^r в нечетных степенях i >= 1, 0 в остальных"""
    return AbelianGroupIso(0, (2,) * r if i % 2 == 1 else ())


def stable_derived_lambda2(i: int, r: int, top: int) -> AbelianGroupIso:
    """
    L^st_i Lambda^2 (Z^r) как H_i C~(Z^r); ответ сверяется с (Z/2)^r для
    нечетных i и 0 для четных

    Raises:
        InsufficientTruncationError: top < i + 1
    """
    if i < 0:
        raise InvalidArgumentError(f"Степень должна быть >= 0: {i}")
    if top < i + 1:
        raise InsufficientTruncationError(
            f"Гомологии в степени {i} надежны только при top >= {i + 1}, получено {top}",
            {"degree": i, "top": top})
    result = homology(build_ctilde(r, top), i)
    expected = expected_stable_lambda2(i, r)
    if result != expected:
        raise InternalConsistencyError(
            f"H_{i} C~(Z^{r}) = {result}, ожидалось {expected}",
            {"degree": i, "rank": r})
    return result


def ctilde_table(r: int, top: int) -> Dict[int, AbelianGroupIso]:
    """Все надежные гомологии H_0 .. H_{top-1}"""
    complex_ = build_ctilde(r, top)
    return {i: homology(complex_, i) for i in range(top)}


# --- коумножение и d_k ---

@dataclass(frozen=True)
class CoproductCheck:
    ok: bool
    factor: int
    counterexample: Optional[MultiIndex] = None

    def __bool__(self) -> bool:
        return self.ok


def comultiplication_matrix(k: int, i: int, r: int) -> Tuple[np.ndarray, List[Tuple[MultiIndex, MultiIndex]]]:
    """
    Delta_{i,k-i}: S^k -> S^i (x) S^(k-i), x^e -> sum_f prod C(e_a, f_a) x^f (x) x^(e-f)

    Returns:
        (матрица, базис строк - пары мономов)
    """
    source = symmetric_power(k, r)
    pairs = list(itertools.product(symmetric_power(i, r).basis, symmetric_power(k - i, r).basis))
    row_of = {pair: n for n, pair in enumerate(pairs)}
    matrix = _zeros(len(pairs), source.dimension)
    for column, e in enumerate(source.basis):
        for f in symmetric_power(i, r).basis:
            if any(fa > ea for fa, ea in zip(f, e)):
                continue
            g = tuple(ea - fa for ea, fa in zip(e, f))
            weight = 1
            for ea, fa in zip(e, f):
                weight *= comb(ea, fa)
            matrix[row_of[(f, g)], column] = weight
    return matrix, pairs


def multiplication_matrix(k: int, pairs: Sequence[Tuple[MultiIndex, MultiIndex]], r: int) -> np.ndarray:
    """S^i (x) S^(k-i) -> S^k: x^f (x) x^g -> x^(f+g)"""
    target = symmetric_power(k, r)
    matrix = _zeros(target.dimension, len(pairs))
    for column, (f, g) in enumerate(pairs):
        matrix[target.index(tuple(a + b for a, b in zip(f, g))), column] = 1
    return matrix


def comult_binomial_check(k: int, i: int, r: int) -> CoproductCheck:
    """Композиция умножения и Delta_{i,k-i} равна умножению на C(k, i)"""
    if not 1 <= i <= k - 1 or r < 1:
        raise InvalidArgumentError(f"Нужны 1 <= i <= k-1 и r >= 1, получено k={k}, i={i}, r={r}")
    delta, pairs = comultiplication_matrix(k, i, r)
    composite = _matmul(multiplication_matrix(k, pairs, r), delta)
    factor = comb(k, i)
    basis = symmetric_power(k, r).basis
    for column, e in enumerate(basis):
        for row in range(len(basis)):
            if composite[row, column] != (factor if row == column else 0):
                return CoproductCheck(False, factor, e)
    return CoproductCheck(True, factor)


def dk_factorization_witness(k: int) -> Tuple[int, ...]:
    """lambda_1..lambda_{k-1} с sum lambda_i C(k, i) = d_k (итерированный алгоритм Евклида)"""
    d = binomial_gcd(k)
    g, witness = comb(k, 1), [1]
    for i in range(2, k):
        s, t, g = extended_gcd(g, comb(k, i))
        witness = [s * w for w in witness] + [t]
    total = sum(w * comb(k, i) for i, w in enumerate(witness, start=1))
    if g != d or total != d:
        raise InternalConsistencyError(f"Свидетель d_{k}: сумма {total}, а d_k = {d}")
    return tuple(witness)
