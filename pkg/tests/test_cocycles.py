import pytest

from algebra_errors import NotEnumerableError, ShapeMismatchError, TooLargeError
from cocycles import (
    add_cocycles,
    binomial_gcd,
    classify_cocycles,
    cocycle_from_vector,
    count_bud_extensions,
    groupoid_invariants,
    is_symmetric_cocycle,
    prime_power_base,
    principal_cocycle,
    universal_cocycle,
    zero_cocycle,
)
from coeff_rings import enumerate_elements, try_invert
from conftest import Z, Z2, Z3, Z4, Z6
from tpseries import TruncatedSeries

FINITE_RINGS = [Z2, Z3, Z4, Z6]


def prime_factors(n):
    factors, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            factors.add(p)
            n //= p
        p += 1
    if n > 1:
        factors.add(n)
    return factors


class TestBinomialGcd:

    @pytest.mark.parametrize("k", range(2, 65))
    def test_closed_form(self, k):
        factors = prime_factors(k)
        expected = next(iter(factors)) if len(factors) == 1 else 1
        assert binomial_gcd(k) == expected
        assert prime_power_base(k) == (expected if expected > 1 else None)


class TestUniversalCocycle:

    @pytest.mark.parametrize("k, ring, vector", [
        (2, Z, (-1,)),
        (3, Z, (-1, -1)),
        (4, Z, (-2, -3, -2)),
        (4, Z2, (0, 1, 0)),
        (5, Z, (-1, -2, -2, -1)),
    ])
    def test_coefficients(self, k, ring, vector):
        assert universal_cocycle(k, ring).coefficient_vector() == tuple(ring.normalize(v) for v in vector)

    def test_principal_is_dk_multiple(self):
        for b in enumerate_elements(Z6):
            theta = principal_cocycle(b, 4).coefficient_vector()
            universal = universal_cocycle(4, Z6).coefficient_vector()
            assert theta == tuple(Z6.normalize(2 * b.value * a) for a in universal)

    @pytest.mark.parametrize("ring", [Z4, Z6], ids=str)
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_principal_is_additive(self, ring, k):
        elements = enumerate_elements(ring)
        for b1 in elements:
            for b2 in elements:
                assert principal_cocycle(b1 + b2, k) == add_cocycles(
                    principal_cocycle(b1, k), principal_cocycle(b2, k))

    @pytest.mark.parametrize("ring", FINITE_RINGS, ids=str)
    @pytest.mark.parametrize("k", range(2, 9))
    def test_universal_is_principal_iff_dk_is_a_unit(self, ring, k):
        # при d_k = p > 1 некоторый коэффициент c_k не делится на p
        universal = universal_cocycle(k, ring).coefficient_vector()
        principal = any(principal_cocycle(b, k).coefficient_vector() == universal
                        for b in enumerate_elements(ring))
        assert principal == (try_invert(ring.element(ring.from_int(binomial_gcd(k)))) is not None)
        if binomial_gcd(k) == 1:
            assert principal

    def test_sum_of_cocycles(self):
        c = universal_cocycle(3, Z)
        assert add_cocycles(c, c).coefficient_vector() == (-2, -2)
        assert add_cocycles(c, zero_cocycle(Z, 3)) == c


class TestCocycleCheck:

    def test_non_cocycle_over_integers(self):
        check = is_symmetric_cocycle(TruncatedSeries(Z, 2, 4, {(2, 2): 1}), 4)
        assert not check
        assert check.failure == "cocycle-identity"

    def test_asymmetric(self):
        check = is_symmetric_cocycle(TruncatedSeries(Z, 2, 4, {(3, 1): 1}), 4)
        assert check.failure == "symmetry"
        assert check.monomial == (3, 1)

    def test_inhomogeneous_is_rejected(self):
        with pytest.raises(ShapeMismatchError):
            is_symmetric_cocycle(TruncatedSeries(Z, 2, 4, {(1, 1): 1, (2, 2): 1}), 4)

    def test_cocycle_from_vector(self):
        assert cocycle_from_vector(Z2, 4, [0, 1, 0]) == universal_cocycle(4, Z2)
        with pytest.raises(ShapeMismatchError):
            cocycle_from_vector(Z, 4, [0, 1, 0])


class TestClassification:

    @pytest.mark.parametrize("ring", FINITE_RINGS, ids=str)
    @pytest.mark.parametrize("k", range(2, 7))
    def test_cocycles_are_multiples_of_universal(self, ring, k):
        universal = universal_cocycle(k, ring).coefficient_vector()
        expected = {tuple(ring.normalize(b.value * a) for a in universal) for b in enumerate_elements(ring)}
        found = {c.coefficient_vector() for c in classify_cocycles(ring, k)}
        assert found == expected

    @pytest.mark.parametrize("ring", FINITE_RINGS, ids=str)
    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_groupoid_invariants(self, ring, k):
        n = ring.modulus
        invariants = groupoid_invariants(ring, k)
        p = prime_power_base(k)
        if p is None:
            assert invariants.pi0_size == 1
        else:
            multiples = {(p * b) % n for b in range(n)}
            torsion = [b for b in range(n) if (p * b) % n == 0]
            assert invariants.pi0_size == n // len(multiples)
            assert invariants.stabilizer_size == len(torsion)

    @pytest.mark.parametrize("ring", FINITE_RINGS, ids=str)
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_classification_is_a_subgroup(self, ring, k):
        found = classify_cocycles(ring, k)
        vectors = {c.coefficient_vector() for c in found}
        for c1 in found:
            for c2 in found:
                assert add_cocycles(c1, c2).coefficient_vector() in vectors
        for b in enumerate_elements(ring):
            assert principal_cocycle(b, k).coefficient_vector() in vectors

    def test_invariants_mod_4(self):
        invariants = groupoid_invariants(Z4, 2)
        assert (invariants.pi0_size, invariants.stabilizer_size) == (2, 2)

    def test_budget(self):
        with pytest.raises(TooLargeError):
            classify_cocycles(Z6, 6, budget=10)

    def test_infinite_ring(self):
        with pytest.raises(NotEnumerableError):
            classify_cocycles(Z, 3)

    def test_count_bud_extensions(self):
        assert count_bud_extensions(Z4, 2) == 4
        assert count_bud_extensions(Z2, 4) == 2
