from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from algebra_errors import DescriptorMismatchError, InvalidArgumentError, NotEnumerableError
from coeff_rings import (
    RingDescriptor,
    characteristic_prime,
    divide_by_integer,
    enumerate_elements,
    extended_gcd,
    ring_arith,
    try_invert,
)
from conftest import Q, Z, Z4, Z6


class TestRingDescriptor:

    @pytest.mark.parametrize("token, expected", [
        ("z", Z),
        ("q", Q),
        ("zmod:6", Z6),
        (" ZMOD:4 ", Z4),
    ])
    def test_parse(self, token, expected):
        assert RingDescriptor.parse(token) == expected

    @pytest.mark.parametrize("token", ["zmod:1", "zmod:x", "r", ""])
    def test_parse_rejects_bad_tokens(self, token):
        with pytest.raises(InvalidArgumentError):
            RingDescriptor.parse(token)

    @pytest.mark.parametrize("ring", [Z, Q, Z6])
    def test_str_is_parseable(self, ring):
        assert RingDescriptor.parse(str(ring)) == ring

    def test_canonical_values(self):
        assert Z6.element(-1).value == 5
        assert Q.element(Fraction(2, 4)).value == Fraction(1, 2)
        assert Z6.parse_element("1/5").value == 5

    def test_format(self):
        assert str(Q.element(3)) == "3"
        assert str(Q.element(Fraction(-1, 2))) == "-1/2"
        assert str(Z6.element(-1)) == "5"


class TestArithmetic:

    @pytest.mark.parametrize("op, expected", [
        ("add", 3),
        ("sub", 5),
        ("mul", 2),
        ("neg", 2),
    ])
    def test_ring_arith_mod_6(self, op, expected):
        assert ring_arith(Z6.element(4), Z6.element(5), op).value == expected

    def test_mismatched_rings(self):
        with pytest.raises(DescriptorMismatchError):
            ring_arith(Z6.element(1), Z4.element(1), "add")

    def test_unknown_op(self):
        with pytest.raises(InvalidArgumentError):
            ring_arith(Z.element(1), Z.element(1), "div")

    @pytest.mark.parametrize("ring, value, expected", [
        (Z6, 5, 5),
        (Z6, 2, None),
        (Z, -1, -1),
        (Z, 2, None),
        (Q, 3, Fraction(1, 3)),
        (Q, 0, None),
    ])
    def test_try_invert(self, ring, value, expected):
        inverse = try_invert(ring.element(value))
        assert (inverse.value if inverse else None) == expected

    @pytest.mark.parametrize("ring, value, m, expected", [
        (Z, 6, 3, 2),
        (Z, 7, 3, None),
        (Z6, 1, 5, 5),
        (Z6, 2, 2, None),
        (Q, 1, 3, Fraction(1, 3)),
    ])
    def test_divide_by_integer(self, ring, value, m, expected):
        result = divide_by_integer(ring.element(value), m)
        assert (result.value if result else None) == expected

    @given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
    def test_extended_gcd(self, a, b):
        s, t, g = extended_gcd(a, b)
        assert g == gcd(a, b)
        assert s * a + t * b == g

    @given(st.integers(2, 30), st.integers(), st.integers(), st.integers())
    def test_zmod_ring_axioms(self, n, a, b, c):
        ring = RingDescriptor.zmod(n)
        x, y, z = ring.element(a), ring.element(b), ring.element(c)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + (-x) == ring.zero()


class TestEnumeration:

    def test_enumerate_finite(self):
        assert [e.value for e in enumerate_elements(Z4)] == [0, 1, 2, 3]

    @pytest.mark.parametrize("ring", [Z, Q])
    def test_infinite_rings_are_not_enumerable(self, ring):
        with pytest.raises(NotEnumerableError):
            enumerate_elements(ring)

    @pytest.mark.parametrize("ring, expected", [
        (RingDescriptor.zmod(5), 5),
        (Z4, None),
        (Z, None),
        (Q, None),
    ])
    def test_characteristic_prime(self, ring, expected):
        assert characteristic_prime(ring) == expected
