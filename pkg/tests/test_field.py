import pytest
from hypothesis import given, strategies as st

from hdual import GF, FieldMismatchError, ParseError
from hdual.field import is_irreducible, is_prime

from conftest import FIELDS, elements

GF4 = FIELDS["4"]
GF9 = FIELDS["9"]


def test_prime_field_arithmetic():
    F = GF(3)
    assert F(2) + F(2) == F(1)
    assert F(2) + F(0) == F(2)
    assert F(2).inverse() == F(2)
    assert GF(5)(3).inverse() == GF(5)(2)
    assert F(2).frobenius(1) == F(2)


def test_gf4_by_hand():
    t = GF4.gen
    assert t + (t + 1) == GF4(1)
    assert t * (t + 1) == GF4(1)
    assert t.frobenius(1) == t + 1
    assert t.frobenius(-1) == t + 1


def test_default_modulus_is_irreducible():
    assert GF9.modulus == (1, 0, 1)
    for p, k in [(2, 3), (3, 3), (5, 2), (7, 2), (2, 5)]:
        F = GF(p, k)
        assert is_irreducible(list(F.modulus), p)


def test_bad_construction():
    with pytest.raises(ValueError):
        GF(9)
    with pytest.raises(ValueError):
        GF(3, 0)
    with pytest.raises(ValueError):
        GF(3, 2, modulus=(1, 1, 1))  # t^2+t+1 = (t+2)^2 mod 3


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatchError):
        GF(3)(1) + GF(5)(1)


def test_parse_and_format_round_trip():
    for a in GF9.elements():
        assert GF9.parse_element(str(a)) == a
    assert GF.parse("3^2") == GF9
    assert GF9.parse_element("2*t+1") == GF9([1, 2])
    with pytest.raises(ParseError):
        GF9.parse_element("1+")


@pytest.mark.parametrize("n", [2, 3, 4, 9, 97, 101, 7919])
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == all(n % d for d in range(2, int(n**0.5) + 1))


@given(elements(GF9), elements(GF9), elements(GF9))
def test_field_axioms_gf9(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == GF9.zero
    if a:
        assert a * a.inverse() == GF9.one


@given(elements(GF9), elements(GF9), st.integers(-6, 6))
def test_frobenius_is_additive_and_invertible(a, b, e):
    assert (a + b).frobenius(e) == a.frobenius(e) + b.frobenius(e)
    assert a.frobenius(e).frobenius(-e) == a
    assert a.frobenius(1) == a**3


def test_multiplicative_group_order():
    for F in (GF4, GF9, GF(2, 3)):
        for a in F.elements():
            assert a ** F.order == a
