import random
from fractions import Fraction
from math import comb

import pytest

from algebra_errors import (
    AxiomViolationError,
    BudMismatchError,
    DegreeMismatchError,
    InvalidArgumentError,
    NeedsQAlgebraError,
    WrongRingError,
)
from cocycles import make_cocycle, principal_cocycle, universal_cocycle
from coeff_rings import RingDescriptor
from conftest import Q, Z, Z2, Z3, Z4, Z6
from fgl import (
    StrictIso,
    add_cocycle,
    additive_fgl,
    bud_isomorphism_step,
    compose_isos,
    conjugate,
    difference_cocycle,
    formal_inverse,
    formal_sum,
    height,
    iso_group,
    is_unique_one_bud,
    kernel_iso,
    logarithm,
    multiplicative_fgl,
    n_series,
    random_bud,
    random_strict_iso,
    truncate_bud,
    truncate_iso,
    validate_bud,
)
from tpseries import TruncatedSeries, series_add, substitute, univariate, variable


def binomial_series(ring, N, n):
    """(1 + x)^n - 1 с обобщенными биномиальными коэффициентами"""
    if n >= 0:
        coefficients = [comb(n, i) for i in range(1, N + 1)]
    else:
        coefficients = [(-1) ** i * comb(-n + i - 1, i) for i in range(1, N + 1)]
    return univariate(ring, N, coefficients)


class TestValidation:

    @pytest.mark.parametrize("ring", [Z, Q, Z2, Z4, Z6], ids=str)
    @pytest.mark.parametrize("law", [additive_fgl, multiplicative_fgl])
    def test_builtin_laws_validate(self, ring, law):
        F = law(ring, 12)
        assert F.bud_order == 12
        assert is_unique_one_bud(F)

    @pytest.mark.parametrize("terms, axiom, monomial", [
        ({(1, 0): 1, (0, 1): 1, (2, 0): 1}, "unit-x", (2, 0)),
        ({(1, 0): 1, (0, 1): 2}, "unit", (0, 1)),
        ({(1, 0): 1, (0, 1): 1, (1, 2): 1}, "symmetry", (1, 2)),
    ])
    def test_axiom_violations(self, terms, axiom, monomial):
        with pytest.raises(AxiomViolationError) as error:
            validate_bud(TruncatedSeries(Z, 2, 3, terms))
        assert error.value.axiom == axiom
        assert error.value.monomial == monomial

    def test_associativity_depends_on_ring(self):
        terms = {(1, 0): 1, (0, 1): 1, (2, 2): 1}
        with pytest.raises(AxiomViolationError) as error:
            validate_bud(TruncatedSeries(Z, 2, 4, terms))
        assert error.value.axiom == "associativity"
        # Над Z/2 x^2 y^2 - универсальный коцикл степени 4
        assert validate_bud(TruncatedSeries(Z2, 2, 4, terms)).bud_order == 4


class TestNSeries:

    def test_multiplicative_three_series(self):
        assert n_series(multiplicative_fgl(Z, 3), 3) == univariate(Z, 3, [3, 3, 1])

    @pytest.mark.parametrize("ring", [Z, Z6], ids=str)
    @pytest.mark.parametrize("n", range(-4, 7))
    def test_multiplicative_is_binomial(self, ring, n):
        assert n_series(multiplicative_fgl(ring, 10), n) == binomial_series(ring, 10, n)

    def test_formal_inverse(self):
        F = multiplicative_fgl(Z, 6)
        x = variable(Z, 1, 6, 0)
        assert substitute(F.series, [x, formal_inverse(F)]).is_zero

    @pytest.mark.parametrize("law", [additive_fgl, multiplicative_fgl])
    def test_formal_inverse_is_an_involution(self, law, rng):
        for F in (law(Z6, 7), random_bud(Z6, 7, rng)):
            iota = formal_inverse(F)
            assert substitute(iota, [iota]) == variable(Z6, 1, 7, 0)

    def test_monoid_law(self):
        rng = random.Random(17)
        laws = [additive_fgl(Z6, 6), multiplicative_fgl(Z6, 6)]
        laws += [random_bud(Z6, 6, rng) for _ in range(20)]
        for F in laws:
            for n in range(-3, 4):
                for m in range(-3, 4):
                    assert substitute(n_series(F, n), [n_series(F, m)]) == n_series(F, n * m)

    def test_formal_sum(self):
        F = multiplicative_fgl(Z, 3)
        x, y = variable(Z, 2, 3, 0), variable(Z, 2, 3, 1)
        assert formal_sum(F, [x, y]) == F.series
        with pytest.raises(InvalidArgumentError):
            formal_sum(F, [])


class TestIsomorphisms:

    def test_linear_coefficient_must_be_one(self):
        with pytest.raises(InvalidArgumentError):
            StrictIso.from_coefficients(Z, 3, [2, 1])

    def test_group_laws(self, rng):
        phi = random_strict_iso(Z6, 5, rng)
        psi = random_strict_iso(Z6, 5, rng)
        identity = StrictIso.identity(Z6, 5)
        assert compose_isos(phi, iso_group(phi, None, "invert")) == identity
        assert iso_group(phi, psi, "compose") == compose_isos(phi, psi)

    def test_conjugation_is_an_action(self, rng):
        F = multiplicative_fgl(Z6, 5)
        phi = random_strict_iso(Z6, 5, rng)
        psi = random_strict_iso(Z6, 5, rng)
        assert conjugate(conjugate(F, phi), psi) == conjugate(F, compose_isos(psi, phi))
        assert conjugate(F, StrictIso.identity(Z6, 5)) == F

    def test_conjugate_additive_by_x_plus_x_squared(self):
        phi = StrictIso.from_coefficients(Q, 2, [1, 1])
        G = conjugate(additive_fgl(Q, 2), phi)
        assert G.series == TruncatedSeries(Q, 2, 2, {(1, 0): 1, (0, 1): 1, (1, 1): 2})

    def test_kernel_iso_truncates_to_identity(self):
        phi = kernel_iso(Z6.element(4), 3, 5)
        assert truncate_iso(phi, 2) == StrictIso.identity(Z6, 2)
        assert phi.series == univariate(Z6, 5, [1, 0, 4])


class TestBudTower:

    def test_add_and_difference_cocycle(self):
        F = multiplicative_fgl(Z, 3)
        c = make_cocycle(universal_cocycle(3, Z).series, 3)
        G = add_cocycle(F, c)
        assert difference_cocycle(G, F) == c
        assert truncate_bud(G, 2) == truncate_bud(F, 2)

    def test_difference_needs_common_lower_bud(self):
        with pytest.raises(BudMismatchError):
            difference_cocycle(multiplicative_fgl(Z, 3), additive_fgl(Z, 3))

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            add_cocycle(multiplicative_fgl(Z, 4), universal_cocycle(3, Z))

    def test_isomorphism_step_on_random_buds(self):
        rng = random.Random(17)
        for _ in range(50):
            k = rng.randint(2, 5)
            F = random_bud(Z6, k, rng)
            b = Z6.element(rng.randrange(6))
            assert bud_isomorphism_step(F, b) == add_cocycle(F, principal_cocycle(-b, k))
            # x - b x^k - обратный к x + b x^k в Phi_k
            assert conjugate(F, kernel_iso(-b, k, k)) == add_cocycle(F, principal_cocycle(b, k))

    def test_step_on_example_law(self):
        F = validate_bud(TruncatedSeries(Z, 2, 2, {(1, 0): 1, (0, 1): 1, (1, 1): 2}))
        G = bud_isomorphism_step(F, Z.element(1))
        # theta(-1) = -x^2 - y^2 + (x+y)^2 = 2xy
        assert G.series == TruncatedSeries(Z, 2, 2, {(1, 0): 1, (0, 1): 1, (1, 1): 4})


class TestHeight:

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_multiplicative_has_height_one(self, p):
        result = height(multiplicative_fgl(RingDescriptor.zmod(p), 5), 5)
        assert result.finite and result.h == 1
        assert result.u.value == 1

    def test_additive_has_unbounded_height(self):
        result = height(additive_fgl(Z2, 30), 30)
        assert not result.finite
        assert result.bound == 30

    @pytest.mark.parametrize("ring", [Z2, Z3], ids=str)
    @pytest.mark.parametrize("law", [additive_fgl, multiplicative_fgl])
    def test_height_is_invariant_under_conjugation(self, ring, law, rng):
        F = law(ring, 9)
        before = height(F, 9)
        for _ in range(5):
            after = height(conjugate(F, random_strict_iso(ring, 9, rng)), 9)
            assert (after.finite, after.h, after.bound) == (before.finite, before.h, before.bound)
            assert after.u == before.u

    def test_height_needs_prime_characteristic(self):
        with pytest.raises(WrongRingError):
            height(multiplicative_fgl(Z4, 5), 5)


class TestLogarithm:

    def test_multiplicative_logarithm(self):
        log = logarithm(multiplicative_fgl(Q, 12))
        expected = univariate(Q, 12, [Fraction((-1) ** (i + 1), i) for i in range(1, 13)])
        assert log.series == expected
        assert conjugate(multiplicative_fgl(Q, 12), log) == additive_fgl(Q, 12)

    def test_functional_equation(self, rng):
        F = conjugate(multiplicative_fgl(Q, 8), random_strict_iso(Q, 8, rng))
        log = logarithm(F).series
        x, y = variable(Q, 2, 8, 0), variable(Q, 2, 8, 1)
        assert substitute(log, [F.series]) == series_add(substitute(log, [x]), substitute(log, [y]))

    def test_additive_logarithm_is_identity(self):
        assert logarithm(additive_fgl(Q, 6)) == StrictIso.identity(Q, 6)

    def test_needs_q_algebra(self):
        with pytest.raises(NeedsQAlgebraError):
            logarithm(multiplicative_fgl(Z, 4))
