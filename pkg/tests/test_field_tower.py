from fractions import Fraction

import pytest
from hypothesis import given, settings

from errors import ConfigError, ZeroInversion
from field_tower import (
    FieldElem,
    PrimeTable,
    fe_add,
    fe_apply_auto,
    fe_inv,
    fe_is_rational,
    fe_mul,
    fixed_by_all,
)
from strategies import field_elems, nonzero_field_elems

s1 = FieldElem.sqrt(1)
s2 = FieldElem.sqrt(2)


def test_default_prime_table():
    assert PrimeTable().primes(6) == [2, 3, 5, 7, 11, 13]


def test_prime_table_override_extends_with_next_primes():
    table = PrimeTable([3, 7])
    assert table.primes(4) == [3, 7, 11, 13]


@pytest.mark.parametrize('primes', [[4], [5, 3], [2, 2]])
def test_prime_table_rejects_bad_override(primes):
    with pytest.raises(ConfigError):
        PrimeTable(primes)


def test_addition_examples():
    assert fe_add(1 + s1, 2 - s1) == 3
    a = 3 - 5 * s1
    assert fe_add(a, FieldElem.zero()) == a
    assert FieldElem({(2,): Fraction(1, 2)}) + FieldElem({(2,): Fraction(1, 3)}) == FieldElem({(2,): Fraction(5, 6)})


def test_multiplication_examples():
    assert fe_mul(s1, s1) == 2
    assert fe_mul(1 + s1, -1 + s1) == 1
    assert fe_mul(3 - 5 * s1, FieldElem.one()) == 3 - 5 * s1
    assert (s1 * s2) * (s1 * s2) == 6


def test_inverse_examples():
    assert fe_inv(s1) == FieldElem({(1,): Fraction(1, 2)})
    assert fe_inv(FieldElem.one()) == 1
    assert fe_inv(1 + s1) == -1 + s1


def test_inverse_of_zero():
    with pytest.raises(ZeroInversion):
        fe_inv(FieldElem.zero())
    with pytest.raises(ZeroDivisionError):
        FieldElem.zero().inverse()


def test_automorphism_examples():
    assert fe_apply_auto(3 + 5 * s1, {1}) == 3 - 5 * s1
    assert fe_apply_auto(s1, {2}) == s1
    assert fe_apply_auto(s1 * s2, {1, 2}) == s1 * s2


def test_rationality_examples():
    assert fe_is_rational(FieldElem.rational(Fraction(7, 3)))
    assert not fe_is_rational(s1)
    assert fe_is_rational(FieldElem.zero())


def test_level_and_text():
    a = FieldElem({(): 3, (1,): -5})
    assert a.to_text() == '3 - 5*s1'
    assert FieldElem({(1, 3): Fraction(-1, 2)}).to_text() == '-1/2*s1*s3'
    assert FieldElem({(1, 3): 1}).level == 3
    assert FieldElem.zero().to_text() == '0'


def test_record_round_trip():
    a = FieldElem({(): Fraction(2, 3), (1, 2): -4})
    assert FieldElem.from_record(a.to_record()) == a


def test_zero_coefficients_are_pruned():
    assert len(FieldElem({(): 0, (1,): 2, (2,): 0})) == 1
    assert (s1 - s1).is_zero()


@settings(max_examples=60, deadline=None)
@given(field_elems(level=6), field_elems(level=6), field_elems(level=6))
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(nonzero_field_elems(level=5))
def test_inverse_law(a):
    assert a * a.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(field_elems(level=6))
def test_automorphisms_are_commuting_involutions(a):
    for i in range(1, 9):
        assert a.apply_auto({i}).apply_auto({i}) == a
        for j in range(1, 9):
            assert a.apply_auto({i}).apply_auto({j}) == a.apply_auto({j}).apply_auto({i})


@settings(max_examples=60, deadline=None)
@given(field_elems(), field_elems())
def test_automorphism_is_ring_homomorphism(a, b):
    for parity in ({1}, {2, 3}, {1, 2, 3, 4}):
        assert (a + b).apply_auto(parity) == a.apply_auto(parity) + b.apply_auto(parity)
        assert (a * b).apply_auto(parity) == a.apply_auto(parity) * b.apply_auto(parity)


@settings(max_examples=100, deadline=None)
@given(field_elems(level=4))
def test_fixed_field_is_the_rationals(a):
    assert fixed_by_all(a, 4) == a.is_rational()
