import pytest
from hypothesis import given, strategies as st

from algebra_errors import (
    ArityMismatchError,
    InvalidArgumentError,
    NotDivisibleError,
    NotInvertibleError,
    ShapeMismatchError,
)
from conftest import Q, Z, Z6
from models import series_from_json, series_to_json
from tpseries import (
    TruncatedSeries,
    compositional_inverse,
    homogeneous_part,
    integrate_univariate,
    is_linear,
    lowest_degree,
    partial_derivative,
    reciprocal_one_plus,
    series_add,
    series_mul,
    series_pow,
    substitute,
    truncate,
    univariate,
    variable,
    zero_series,
)


def xy(ring, N):
    return variable(ring, 2, N, 0), variable(ring, 2, N, 1)


BIVARIATE_EXPONENTS = [(i, j) for i in range(5) for j in range(5) if 1 <= i + j <= 4]


@st.composite
def bivariate_series(draw, ring=Z6, N=4):
    terms = draw(st.dictionaries(st.sampled_from(BIVARIATE_EXPONENTS), st.integers(-5, 5), max_size=5))
    return TruncatedSeries(ring, 2, N, terms)


class TestConstruction:

    def test_constant_term_is_rejected(self):
        with pytest.raises(ShapeMismatchError):
            TruncatedSeries(Z, 1, 3, {(0,): 1})

    def test_degree_above_precision_is_rejected(self):
        with pytest.raises(ShapeMismatchError):
            TruncatedSeries(Z, 1, 3, {(4,): 1})

    def test_zero_coefficients_are_dropped(self):
        f = TruncatedSeries(Z6, 1, 3, {(1,): 6, (2,): 7})
        assert f.raw_terms() == {(2,): 1}

    def test_zero_variables(self):
        f = zero_series(Z, 0, 3)
        assert f.is_zero
        assert substitute(f, []).num_vars == 0

    def test_text_uses_graded_lex_order(self):
        f = TruncatedSeries(Z, 2, 2, {(2, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 2})
        assert f.to_text() == "x0 + x1 + x0^2 + 2*x0*x1"

    def test_json_preserves_series(self):
        f = TruncatedSeries(Q, 2, 3, {(1, 0): 1, (1, 2): "1/2"})
        text = series_to_json(f)
        assert '"coef": "1/2"' in text
        assert series_from_json(text) == f

    def test_json_rejects_bad_document(self):
        with pytest.raises(InvalidArgumentError):
            series_from_json('{"ring": "z", "vars": 1}')


class TestArithmetic:

    def test_square_of_sum(self):
        x, y = xy(Z, 3)
        assert series_pow(x + y, 2) == TruncatedSeries(Z, 2, 3, {(2, 0): 1, (1, 1): 2, (0, 2): 1})

    def test_product_is_truncated(self):
        x = variable(Z, 1, 3, 0)
        assert series_mul(x * x, x * x).is_zero

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            variable(Z, 1, 3, 0) + variable(Z, 1, 4, 0)

    def test_truncate(self):
        f = univariate(Z, 4, [1, 2, 3, 4])
        assert truncate(f, 2) == univariate(Z, 2, [1, 2])
        with pytest.raises(InvalidArgumentError):
            truncate(f, 5)

    def test_degree_helpers(self):
        x, y = xy(Z, 3)
        f = x * y + x * x * y
        assert lowest_degree(f) == 2
        assert lowest_degree(zero_series(Z, 2, 3)) is None
        assert homogeneous_part(f, 3) == x * x * y
        assert is_linear(x + y) and not is_linear(f)


class TestSubstitution:

    def test_substitute_into_sum(self):
        x, y = xy(Z, 2)
        g = univariate(Z, 2, [1, 1])
        expected = TruncatedSeries(Z, 2, 2, {(1, 0): 1, (0, 1): 1, (2, 0): 1, (1, 1): 2, (0, 2): 1})
        assert substitute(g, [x + y]) == expected

    def test_arity_mismatch(self):
        x, y = xy(Z, 2)
        with pytest.raises(ArityMismatchError):
            substitute(x, [x])

    def test_inverse_of_x_plus_x_squared(self):
        phi = univariate(Z, 4, [1, 1])
        assert compositional_inverse(phi) == univariate(Z, 4, [1, -1, 2, -5])

    def test_non_invertible_linear_term(self):
        with pytest.raises(NotInvertibleError):
            compositional_inverse(univariate(Z, 3, [2, 1]))
        assert compositional_inverse(univariate(Q, 2, [2])) == univariate(Q, 2, ["1/2"])

    @given(st.lists(st.integers(-5, 5), min_size=5, max_size=5))
    def test_inverse_is_two_sided(self, tail):
        phi = univariate(Z6, 6, [1] + tail)
        psi = compositional_inverse(phi)
        x = variable(Z6, 1, 6, 0)
        assert substitute(phi, [psi]) == x
        assert substitute(psi, [phi]) == x

    @given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
           st.lists(st.integers(-3, 3), min_size=3, max_size=3),
           st.lists(st.integers(-3, 3), min_size=3, max_size=3))
    def test_substitution_is_associative(self, a, b, c):
        f, g, h = (univariate(Z, 3, coefficients) for coefficients in (a, b, c))
        assert substitute(substitute(f, [g]), [h]) == substitute(f, [substitute(g, [h])])


class TestCalculus:

    def test_partial_derivative(self):
        f = TruncatedSeries(Z, 2, 3, {(1, 0): 1, (2, 1): 1, (0, 2): 3})
        constant, df_dy = partial_derivative(f, 1)
        assert constant.value == 0
        assert df_dy == TruncatedSeries(Z, 2, 2, {(2, 0): 1, (0, 1): 6})
        constant, df_dx = partial_derivative(f, 0)
        assert constant.value == 1
        assert df_dx == TruncatedSeries(Z, 2, 2, {(1, 1): 2})

    def test_reciprocal_one_plus(self):
        x = variable(Z, 1, 3, 0)
        assert reciprocal_one_plus(x) == univariate(Z, 3, [-1, 1, -1])

    def test_integrate_over_integers(self):
        assert integrate_univariate(univariate(Z, 2, [2])) == univariate(Z, 3, [0, 1])
        with pytest.raises(NotDivisibleError) as error:
            integrate_univariate(univariate(Z, 2, [1]))
        assert error.value.details == {"degree": 2}

    def test_integrate_over_rationals(self):
        assert integrate_univariate(univariate(Q, 2, [1, 1])) == univariate(Q, 3, [0, "1/2", "1/3"])


class TestRingLaws:

    @given(bivariate_series(), bivariate_series())
    def test_mul_is_commutative(self, f, g):
        assert series_mul(f, g) == series_mul(g, f)

    @given(bivariate_series(), bivariate_series(), bivariate_series())
    def test_mul_is_associative(self, f, g, h):
        assert series_mul(series_mul(f, g), h) == series_mul(f, series_mul(g, h))

    @given(bivariate_series(), bivariate_series(), st.integers(1, 4))
    def test_truncation_commutes_with_mul(self, f, g, k):
        assert truncate(series_mul(f, g), k) == series_mul(truncate(f, k), truncate(g, k))

    @given(bivariate_series(), bivariate_series(), bivariate_series(), bivariate_series())
    def test_substitution_distributes(self, f, g, h1, h2):
        hs = [h1, h2]
        assert substitute(series_add(f, g), hs) == series_add(substitute(f, hs), substitute(g, hs))
        assert substitute(series_mul(f, g), hs) == series_mul(substitute(f, hs), substitute(g, hs))

    @given(st.lists(st.integers(-5, 5), min_size=5, max_size=5))
    def test_inverse_is_an_involution(self, tail):
        phi = univariate(Z6, 6, [1] + tail)
        assert compositional_inverse(compositional_inverse(phi)) == phi
