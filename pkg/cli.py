"""
Командная строка formal-buds

JSON-отчет печатается в stdout, диагностика уходит в stderr.
Коды выхода: 0 - успех, 1 - математическая проверка не прошла,
2 - некорректный ввод.
"""

import functools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click

from algebra_constants import AlgebraConstants
from algebra_errors import AlgebraError, AxiomViolationError, CheckFailedError, InvalidArgumentError
from check_report import CheckReport
from cocycles import (
    SymCocycle,
    binomial_gcd,
    classify_cocycles,
    groupoid_invariants,
    universal_cocycle,
)
from coeff_rings import RingDescriptor
from fgl import (
    FormalGroupBud,
    StrictIso,
    add_cocycle,
    builtin_fgl,
    conjugate,
    height,
    logarithm,
    n_series,
    validate_bud,
)
from functor_homology import (
    comult_binomial_check,
    ctilde_table,
    dk_factorization_witness,
    expected_stable_lambda2,
    smith_normal_form,
    to_int_matrix,
)
from gamma import (
    DBElement,
    HZElement,
    PointedSet,
    check_fstar_homomorphism,
    check_gammaring_axioms,
    db_mul,
    fstar,
    homogeneous_decomposition,
)
from logger_config import cli_logger as logger
from models import (
    AbelianGroupModel,
    CheckIssueModel,
    CheckReportModel,
    CheckSuitesModel,
    CocycleClassificationModel,
    ErrorResponse,
    GroupoidInvariantsModel,
    HeightModel,
    SeriesModel,
    SmithFormModel,
    series_from_json,
)
from settings import get_settings
from tpseries import TruncatedSeries, scalar_mul


@dataclass(frozen=True)
class CommonOptions:
    """Общие флаги всех команд"""
    ring: RingDescriptor
    precision: int
    seed: int
    output: str
    budget: int


@dataclass
class CommandResult:
    payload: Dict[str, Any]
    exit_code: int = AlgebraConstants.EXIT_OK


# --- вывод ---

def _render_text(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            return [f"{pad}{', '.join(str(item) for item in value)}"]
        lines = []
        for item in value:
            lines.extend(_render_text(item, indent + 1) if isinstance(item, dict) else [f"{pad}- {item}"])
        return lines
    return [f"{pad}{value}"]


def _emit(payload: Dict[str, Any], output: str) -> None:
    if output == "text":
        click.echo("\n".join(_render_text(payload)))
    else:
        click.echo(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))


def _error_payload(error: AlgebraError) -> Dict[str, Any]:
    return ErrorResponse(error=error.error_code, message=error.message, details=error.details).model_dump()


# --- общие флаги ---

def common_options(func: Callable[..., CommandResult]) -> Callable:
    """Добавляет --ring --precision --seed --output --budget и отображение ошибок в коды выхода"""

    @click.option("--budget", type=int, default=None, help="Бюджет перебора (по умолчанию из настроек)")
    @click.option("--output", type=click.Choice(AlgebraConstants.OUTPUT_FORMATS), default="json",
                  show_default=True, help="Формат вывода")
    @click.option("--seed", type=int, default=None, help="Зерно генератора (по умолчанию из настроек)")
    @click.option("--precision", type=click.IntRange(min=1), default=None,
                  help="Точность рядов (по умолчанию из настроек)")
    @click.option("--ring", default=AlgebraConstants.RING_INTEGERS, show_default=True,
                  help="Кольцо коэффициентов: z, q, zmod:n")
    @functools.wraps(func)
    def wrapper(ring: str, precision: Optional[int], seed: Optional[int], output: str,
                budget: Optional[int], **kwargs):
        settings = get_settings()
        ctx = click.get_current_context()
        try:
            options = CommonOptions(
                ring=RingDescriptor.parse(ring),
                precision=precision or settings.default_precision,
                seed=settings.default_seed if seed is None else seed,
                output=output,
                budget=budget or settings.enumeration_budget,
            )
            logger.debug(f"Команда {ctx.command_path}: {options}")
            result = func(options, **kwargs)
        except CheckFailedError as e:
            logger.error(f"❌ Проверка не прошла: {e.message}")
            _emit(_error_payload(e), output)
            ctx.exit(AlgebraConstants.EXIT_CHECK_FAILED)
        except AlgebraError as e:
            logger.error(f"❌ {e.message}")
            _emit(_error_payload(e), output)
            ctx.exit(AlgebraConstants.EXIT_INVALID_INPUT)
        _emit(result.payload, output)
        ctx.exit(result.exit_code)

    return wrapper


# --- загрузка входных данных ---

def _read_series(path: str) -> TruncatedSeries:
    return series_from_json(Path(path).read_text(encoding="utf-8"))


def _load_fgl(options: CommonOptions, law: str, input_path: Optional[str]) -> FormalGroupBud:
    if input_path:
        return validate_bud(_read_series(input_path))
    return builtin_fgl(law, options.ring, options.precision)


def _series_payload(series: TruncatedSeries) -> Dict[str, Any]:
    return SeriesModel.from_series(series).model_dump()


def _report_model(report: CheckReport) -> CheckReportModel:
    return CheckReportModel(
        **report.get_summary(),
        issues=[CheckIssueModel(**vars(issue)) for issue in report.issues],
    )


def _report_result(report: CheckReport) -> CommandResult:
    model = _report_model(report)
    code = AlgebraConstants.EXIT_OK if report.passed else AlgebraConstants.EXIT_CHECK_FAILED
    return CommandResult(model.model_dump(), code)


fgl_option = click.option("--fgl", "law", type=click.Choice(AlgebraConstants.BUILTIN_FGLS),
                          default="multiplicative", show_default=True, help="Встроенный закон")
input_option = click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
                            default=None, help="JSON-файл с рядом F(x, y)")


@click.group()
@click.version_option(AlgebraConstants.SCHEMA_VERSION, prog_name="formal-buds",
                      message="%(prog)s schema %(version)s")
def cli():
    """Точная арифметика формальных групповых законов, коциклов и Гамма-колец"""


# --- fgl ---

@cli.group()
def fgl():
    """Бутоны формальных групповых законов"""


@fgl.command("validate")
@common_options
@fgl_option
@input_option
def fgl_validate(options: CommonOptions, law: str, input_path: Optional[str]) -> CommandResult:
    """Проверка аксиом бутона"""
    try:
        F = _load_fgl(options, law, input_path)
    except AxiomViolationError as e:
        logger.warning(f"⚠️  Нарушена аксиома {e.axiom} в мономе {e.monomial}")
        return CommandResult(
            {"valid": False, "axiom": e.axiom, "monomial": list(e.monomial or ()), "message": e.message},
            AlgebraConstants.EXIT_CHECK_FAILED)
    logger.info(f"✅ Бутон порядка {F.bud_order} над {F.ring} корректен")
    return CommandResult({"valid": True, "series": _series_payload(F.series)})


@fgl.command("nseries")
@common_options
@fgl_option
@input_option
@click.option("--n", type=int, required=True, help="Множитель n в [n]_F")
def fgl_nseries(options: CommonOptions, law: str, input_path: Optional[str], n: int) -> CommandResult:
    """n-ряд [n]_F"""
    F = _load_fgl(options, law, input_path)
    return CommandResult({"n": n, "series": _series_payload(n_series(F, n))})


@fgl.command("height")
@common_options
@fgl_option
@input_option
@click.option("--bound", type=int, default=None, help="Граница поиска (по умолчанию точность)")
def fgl_height(options: CommonOptions, law: str, input_path: Optional[str], bound: Optional[int]) -> CommandResult:
    """Высота над Z/p"""
    F = _load_fgl(options, law, input_path)
    result = height(F, bound or F.bud_order)
    model = HeightModel(finite=result.finite, h=result.h,
                        u=None if result.u is None else str(result.u), at_least=result.bound)
    return CommandResult(model.model_dump())


@fgl.command("log")
@common_options
@fgl_option
@input_option
def fgl_log(options: CommonOptions, law: str, input_path: Optional[str]) -> CommandResult:
    """Логарифм над Q-алгеброй"""
    F = _load_fgl(options, law, input_path)
    return CommandResult({"logarithm": _series_payload(logarithm(F).series)})


@fgl.command("conjugate")
@common_options
@fgl_option
@input_option
@click.option("--phi", required=True, help="Коэффициенты phi при x, x^2, ... через запятую")
def fgl_conjugate(options: CommonOptions, law: str, input_path: Optional[str], phi: str) -> CommandResult:
    """Сопряжение F^phi"""
    F = _load_fgl(options, law, input_path)
    coefficients = [F.ring.parse_element(part) for part in phi.split(",")]
    iso = StrictIso.from_coefficients(F.ring, F.bud_order, coefficients)
    return CommandResult({"series": _series_payload(conjugate(F, iso).series)})


@fgl.command("add-cocycle")
@common_options
@fgl_option
@input_option
@click.option("--b", "multiplier", required=True, help="Множитель b универсального коцикла")
def fgl_add_cocycle(options: CommonOptions, law: str, input_path: Optional[str], multiplier: str) -> CommandResult:
    """F + b * c_N, N - порядок бутона"""
    F = _load_fgl(options, law, input_path)
    b = F.ring.parse_element(multiplier)
    universal = universal_cocycle(F.bud_order, F.ring)
    G = add_cocycle(F, SymCocycle(universal.k, F.ring, scalar_mul(b, universal.series)))
    return CommandResult({"series": _series_payload(G.series)})


# --- cocycle ---

@cli.group()
def cocycle():
    """Симметрические 2-коциклы"""


k_option = click.option("--k", type=click.IntRange(min=2), required=True, help="Степень коцикла")


@cocycle.command("universal")
@common_options
@k_option
def cocycle_universal(options: CommonOptions, k: int) -> CommandResult:
    """Универсальный коцикл c_k"""
    c = universal_cocycle(k, options.ring)
    return CommandResult({
        "k": k,
        "dk": binomial_gcd(k),
        "coefficients": [options.ring.format_raw(v) for v in c.coefficient_vector()],
        "series": _series_payload(c.series),
    })


@cocycle.command("classify")
@common_options
@k_option
def cocycle_classify(options: CommonOptions, k: int) -> CommandResult:
    """Перебор всех коциклов над конечным кольцом"""
    ring = options.ring
    found = classify_cocycles(ring, k, options.budget)
    invariants = groupoid_invariants(ring, k, options.budget, cocycles=found)
    model = CocycleClassificationModel(
        k=k,
        ring=str(ring),
        count=len(found),
        cocycles=[[ring.format_raw(v) for v in c.coefficient_vector()] for c in found],
        universal=[ring.format_raw(v) for v in universal_cocycle(k, ring).coefficient_vector()],
        pi0=invariants.pi0_size,
        stabilizer=invariants.stabilizer_size,
    )
    return CommandResult(model.model_dump())


@cocycle.command("invariants")
@common_options
@k_option
def cocycle_invariants(options: CommonOptions, k: int) -> CommandResult:
    """pi_0 и стабилизатор группоида коциклов"""
    invariants = groupoid_invariants(options.ring, k, options.budget)
    model = GroupoidInvariantsModel(k=k, ring=str(options.ring), pi0=invariants.pi0_size,
                                    stabilizer=invariants.stabilizer_size, count=invariants.cocycle_count)
    return CommandResult(model.model_dump())


# --- gamma ---

@cli.group()
def gamma():
    """Гамма-кольца HZ и DB"""


@gamma.command("check")
@common_options
@click.option("--suite", type=click.Choice(AlgebraConstants.CHECK_SUITES + [AlgebraConstants.ALL_SUITES]),
              default=AlgebraConstants.ALL_SUITES, show_default=True, help="Набор проверок")
@click.option("--trials", type=click.IntRange(min=0), default=100, show_default=True, help="Число испытаний")
@click.option("--max-set", "--max-set-size", "max_set_size", type=click.IntRange(min=1), default=None,
              help="Наибольшее |K|")
@fgl_option
@input_option
def gamma_check(options: CommonOptions, suite: str, trials: int, max_set_size: Optional[int],
                law: str, input_path: Optional[str]) -> CommandResult:
    """Рандомизированная проверка аксиом Гамма-кольца и гомоморфизма F*"""
    max_set_size = max_set_size or get_settings().max_set_size
    reports: List[CheckReport] = []
    if suite in ("gammaring", AlgebraConstants.ALL_SUITES):
        reports.append(check_gammaring_axioms(options.ring, options.precision, max_set_size, trials, options.seed))
    if suite in ("fstar", AlgebraConstants.ALL_SUITES):
        F = _load_fgl(options, law, input_path)
        reports.append(check_fstar_homomorphism(F, max_set_size, trials, options.seed))
    if suite != AlgebraConstants.ALL_SUITES:
        return _report_result(reports[0])
    passed = all(report.passed for report in reports)
    model = CheckSuitesModel(passed=passed, suites={report.name: _report_model(report) for report in reports})
    return CommandResult(model.model_dump(),
                         AlgebraConstants.EXIT_OK if passed else AlgebraConstants.EXIT_CHECK_FAILED)


@gamma.command("fstar")
@common_options
@fgl_option
@input_option
@click.option("--set", "set_size", type=click.IntRange(min=0), default=None,
              help="Размер m точечного множества m+ (сверяется с длиной --element)")
@click.option("--element", required=True, help="Элемент HZ(m+): коэффициенты через запятую")
def gamma_fstar(options: CommonOptions, law: str, input_path: Optional[str], set_size: Optional[int],
                element: str) -> CommandResult:
    """Образ F*(a) в DB"""
    a = HZElement.parse(element)
    if set_size is not None and set_size != a.pointed_set.size:
        raise InvalidArgumentError(
            f"--set {set_size} не совпадает с числом коэффициентов элемента ({a.pointed_set.size})",
            {"set": set_size, "element_size": a.pointed_set.size})
    F = _load_fgl(options, law, input_path)
    return CommandResult({"element": str(a), "image": _series_payload(fstar(F, a).series)})


@gamma.command("mul")
@common_options
@click.option("--left", "left_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--right", "right_path", type=click.Path(exists=True, dir_okay=False), required=True)
def gamma_mul(options: CommonOptions, left_path: str, right_path: str) -> CommandResult:
    """mu(f ^ g) для f in DB(K), g in DB(L), заданных JSON-файлами"""
    f, g = _read_series(left_path), _read_series(right_path)
    product = db_mul(DBElement(PointedSet(f.num_vars), f), DBElement(PointedSet(g.num_vars), g))
    return CommandResult({"product": _series_payload(product.series)})


@gamma.command("decompose")
@common_options
@input_option
def gamma_decompose(options: CommonOptions, input_path: Optional[str]) -> CommandResult:
    """Разложение элемента DB(K) по симметрическим степеням"""
    if not input_path:
        raise click.UsageError("Нужен --input с рядом")
    f = _read_series(input_path)
    slots = homogeneous_decomposition(DBElement(PointedSet(f.num_vars), f))
    return CommandResult({
        str(k): {
            "dimension": slot.dimension,
            "basis": [list(s) for s in slot.basis],
            "coefficients": [str(c) for c in slot.coefficients],
        }
        for k, slot in slots.items()
    })


# --- homology ---

@cli.group()
def homology():
    """Целочисленные комплексы и нормальная форма Смита"""


@homology.command("ctilde")
@common_options
@click.option("--rank", type=click.IntRange(min=1), required=True, help="Ранг r")
@click.option("--top", type=click.IntRange(min=1), required=True, help="Верхняя степень комплекса")
def homology_ctilde(options: CommonOptions, rank: int, top: int) -> CommandResult:
    """Гомологии C~(Z^r) в степенях 0..top-1"""
    table = ctilde_table(rank, top)
    payload = {str(i): AbelianGroupModel(free=g.free_rank, torsion=list(g.torsion)).model_dump()
               for i, g in table.items()}
    mismatched = [i for i, g in table.items() if g != expected_stable_lambda2(i, rank)]
    if mismatched:
        logger.error(f"❌ Гомологии C~ не совпали с ожидаемыми в степенях {mismatched}")
        return CommandResult(payload, AlgebraConstants.EXIT_CHECK_FAILED)
    return CommandResult(payload)


@homology.command("snf")
@common_options
@click.option("--matrix", "matrix_text", required=True, help='Строки через ";", элементы через ",": "2,4;6,8"')
def homology_snf(options: CommonOptions, matrix_text: str) -> CommandResult:
    """Нормальная форма Смита"""
    try:
        rows = [[int(v) for v in row.split(",")] for row in matrix_text.split(";") if row.strip()]
    except ValueError:
        raise click.BadParameter(f"Некорректная матрица: {matrix_text!r}", param_hint="--matrix")
    snf = smith_normal_form(to_int_matrix(rows))
    model = SmithFormModel(
        D=snf.D.tolist(), U=snf.U.tolist(), V=snf.V.tolist(),
        invariant_factors=snf.invariant_factors,
    )
    return CommandResult(model.model_dump())


# --- functors ---

@cli.group()
def functors():
    """Полиномиальные функторы"""


@functors.command("binom-check")
@common_options
@click.option("--k", type=click.IntRange(min=2), required=True)
@click.option("--i", "i", type=click.IntRange(min=1), required=True)
@click.option("--rank", type=click.IntRange(min=1), required=True)
def functors_binom_check(options: CommonOptions, k: int, i: int, rank: int) -> CommandResult:
    """Умножение после Delta_{i,k-i} равно C(k, i)"""
    result = comult_binomial_check(k, i, rank)
    payload = {"k": k, "i": i, "rank": rank, "ok": result.ok, "factor": result.factor,
               "counterexample": None if result.counterexample is None else list(result.counterexample)}
    code = AlgebraConstants.EXIT_OK if result.ok else AlgebraConstants.EXIT_CHECK_FAILED
    return CommandResult(payload, code)


@functors.command("dk-witness")
@common_options
@click.option("--k", type=click.IntRange(min=2), required=True)
def functors_dk_witness(options: CommonOptions, k: int) -> CommandResult:
    """Коэффициенты lambda_i с sum lambda_i C(k, i) = d_k"""
    return CommandResult({"k": k, "dk": binomial_gcd(k), "witness": list(dk_factorization_witness(k))})
