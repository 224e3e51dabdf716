import pytest
from hypothesis import given, settings

from errors import BadArguments
from ordered_group import IDENTITY, GroupWord, Ordering, gw_compare, gw_in_H, gw_inv, gw_mul, gw_parity
from strategies import group_words

x1 = GroupWord.generator(1)
x2 = GroupWord.generator(2)


def test_multiplication_examples():
    assert gw_mul(x1, x1.inverse()) == IDENTITY
    assert gw_mul(x1, x2).exponents == {1: 1, 2: 1}
    assert gw_mul(x1 ** 2, x1 ** 3) == GroupWord.generator(1, 5)


def test_inverse_examples():
    assert gw_inv(x1) == GroupWord.generator(1, -1)
    assert gw_inv(IDENTITY) == IDENTITY
    assert gw_inv(GroupWord({1: 2, 2: -1})) == GroupWord({1: -2, 2: 1})


def test_compare_examples():
    assert gw_compare(GroupWord.generator(1, -1), GroupWord.generator(2, -1)) is Ordering.LT
    assert gw_compare(IDENTITY, IDENTITY) is Ordering.EQ
    assert gw_compare(GroupWord({1: 1, 2: -5}), GroupWord({1: 1})) is Ordering.LT


def test_compare_with_different_supports():
    assert gw_compare(GroupWord({3: 1}), GroupWord({2: -1})) is Ordering.GT
    assert GroupWord({1: -1}) < IDENTITY < GroupWord({4: 1})


def test_squares_subgroup_examples():
    assert gw_in_H(x1 ** 2)
    assert not gw_in_H(x1 * x2)
    assert gw_in_H(IDENTITY)


def test_parity_examples():
    assert gw_parity(GroupWord({1: 3, 2: 2})) == {1}
    assert gw_parity(IDENTITY) == frozenset()
    assert gw_parity(x1 * x2) == {1, 2}


def test_text_form():
    assert IDENTITY.to_text() == 'e'
    assert GroupWord({3: 2, 1: -1}).to_text() == 'x1^-1*x3^2'
    assert (x1 * x2).to_text() == 'x1*x2'


def test_record_round_trip():
    word = GroupWord({1: -1, 3: 2})
    assert GroupWord.from_record(word.to_record()) == word


def test_rejects_non_positive_index():
    with pytest.raises(BadArguments):
        GroupWord({0: 1})


@settings(max_examples=300, deadline=None)
@given(group_words(), group_words(), group_words())
def test_total_order_laws(x, y, z):
    reverse = {Ordering.LT: Ordering.GT, Ordering.GT: Ordering.LT, Ordering.EQ: Ordering.EQ}
    assert gw_compare(y, x) is reverse[gw_compare(x, y)]
    assert (gw_compare(x, y) is Ordering.EQ) == (x == y)
    if x <= y and y <= z:
        assert x <= z
    if x < y:
        assert x * z < y * z


@settings(max_examples=200, deadline=None)
@given(group_words(), group_words())
def test_parity_is_a_homomorphism(x, y):
    assert gw_parity(x * y) == gw_parity(x) ^ gw_parity(y)


@settings(max_examples=200, deadline=None)
@given(group_words(), group_words())
def test_squares_form_a_subgroup(x, y):
    assert gw_in_H(x * x)
    assert gw_in_H((x * x) * (y * y).inverse())
    if gw_in_H(x):
        assert not gw_parity(x)
