"""Exact scalar arithmetic over Q, F_p, and F_p^2."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polimage.fields import (FieldMismatchError, FieldSpec, QQ, Scalar,
                             ScalarParseError, parse_scalar, sqrt_in_closure)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)
F9 = FieldSpec(3, 2)
F25 = FieldSpec(5, 2)
F4 = FieldSpec(2, 2)


def test_rational_arithmetic():
    a = QQ.from_fraction(Fraction(1, 2))
    b = QQ.from_fraction(Fraction(1, 3))
    assert (a + b).val == Fraction(5, 6)
    assert (a * b).val == Fraction(1, 6)
    assert (a / b).val == Fraction(3, 2)


def test_prime_field_values():
    assert (F5.from_int(3) * F5.from_int(4)).val == 2
    assert (F5.from_int(2) ** -1).val == 3
    assert F5.from_fraction(Fraction(1, 2)).val == 3


def test_fraction_with_noninvertible_denominator():
    with pytest.raises(ZeroDivisionError):
        F5.from_fraction(Fraction(1, 5))


def test_extension_multiplication():
    # theta^2 = d with d the least non-residue, so d = 2 for p = 3: the
    # product (1 + t)(1 - t) must be 1 - t^2 = 1 - 2 = -1 = 2
    one_plus = Scalar(F9, (1, 1))
    one_minus = Scalar(F9, (1, 2))
    assert (one_plus * one_minus).val == (2, 0)


def test_char2_extension():
    # t^2 = t + 1 in F4
    t = F4.theta()
    assert (t * t).val == (1, 1)
    assert (t * t * t).val == (1, 0)  # multiplicative order 3


def test_extension_inverse():
    for field in (F9, F25, F4):
        for a in range(field.char):
            for b in range(field.char):
                if a == b == 0:
                    continue
                x = Scalar(field, (a, b))
                assert (x * x.inverse()).is_one()


def test_sqrt_in_closure():
    r = sqrt_in_closure(F5.from_int(4))
    assert r.val == (2, 0)
    r = sqrt_in_closure(F3.from_int(2))
    assert r * r == Scalar(F9, (2, 0))
    assert r.val == (0, 1)  # canonical root of the generator itself
    z = sqrt_in_closure(F5.zero())
    assert z.is_zero()


def test_sqrt_char2_is_frobenius():
    # squaring is a bijection of F4, so every element has exactly one root
    for a in range(2):
        for b in range(2):
            x = Scalar(F4, (a, b))
            r = sqrt_in_closure(x)
            assert r * r == x
    assert sqrt_in_closure(F2.from_int(1)).is_one()


def test_mixed_field_rejected():
    with pytest.raises(FieldMismatchError):
        F5.from_int(1) + F3.from_int(1)


def test_subfield_embedding_compares_equal():
    assert F3.from_int(2) == Scalar(F9, (2, 0))
    assert hash(F3.from_int(2)) == hash(Scalar(F9, (2, 0)))


def test_parse_scalar():
    assert parse_scalar("3/4", QQ).val == Fraction(3, 4)
    assert parse_scalar("-2", F5).val == 3
    assert parse_scalar("1+2*t", F9).val == (1, 2)
    assert parse_scalar("t", F9).val == (0, 1)
    assert parse_scalar("2*t", F9).val == (0, 2)
    with pytest.raises(ScalarParseError):
        parse_scalar("t", F5)
    with pytest.raises(ScalarParseError):
        parse_scalar("1/0", QQ)


def test_field_spec_validation():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(0, 2)
    with pytest.raises(ValueError):
        FieldSpec(5, 3)


def test_elements_enumeration():
    assert len(list(F9.elements())) == 9
    assert len(list(F5.elements())) == 5
    assert str(F9) == "F3^2"


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_ring_laws_rational(a, b, c):
    x, y, z = (QQ.from_int(v) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x


@given(st.sampled_from([(a, b) for a in range(3) for b in range(3)]),
       st.sampled_from([(a, b) for a in range(3) for b in range(3)]),
       st.sampled_from([(a, b) for a in range(3) for b in range(3)]))
def test_ring_laws_extension(pa, pb, pc):
    x, y, z = (Scalar(F9, v) for v in (pa, pb, pc))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x


@given(st.integers(1, 8))
def test_extension_inverse_roundtrip(n):
    x = Scalar(F9, (n % 3, n // 3))
    assert (x * x.inverse()).is_one()
    assert x ** -2 == (x * x).inverse()
