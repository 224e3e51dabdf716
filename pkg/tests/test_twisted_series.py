from fractions import Fraction

import pytest
from hypothesis import given, settings

from errors import BadArguments, MixedTruncation, NeedsDepth, TruncatedInput, ZeroInversion
from field_tower import FieldElem
from ordered_group import IDENTITY, GroupWord
from strategies import field_elems, group_words, nonzero_series, series
from twisted_series import (
    GammaSpec,
    Series,
    check_inversion_contract,
    gamma_coefficient_witness,
    gamma_independence_probe,
    gamma_series,
    gamma_tail_check,
    gamma_tail_series,
    gamma_witness,
    inversion_residual,
    sr_add,
    sr_commutation_window_test,
    sr_commutator,
    sr_conjugate,
    sr_inv,
    sr_is_central,
    sr_mul,
)

x1 = Series.generator(1)
x2 = Series.generator(2)
s1 = Series.sqrt(1)


def word(**exponents):
    return GroupWord({int(name[1:]): value for name, value in exponents.items()})


def test_addition_examples():
    assert sr_add(x1 + s1, x1 - s1) == 2 * x1
    assert sr_add(x1, Series.zero()) == x1
    assert sr_add(3 * x1 ** 2, -3 * x1 ** 2).is_zero()


def test_twisted_multiplication_examples():
    product = sr_mul(x1, s1)
    assert product == -(s1 * x1)
    assert product.coefficient(word(x1=1)) == FieldElem({(1,): -1})
    assert sr_mul(x2, s1) == s1 * x2
    assert (s1 * x1) * (s1 * x1) == -2 * Series.generator(1, 2)


def test_conjugation_examples():
    assert sr_conjugate(s1, x1, 1) == -s1
    assert sr_conjugate(x2, x1, 1) == x2
    a = 3 * s1 * x2
    assert sr_conjugate(a, Series.one(), 1) == a


def test_commutator_examples():
    assert sr_commutator(x1, s1, 1) == -1
    a = 3 * s1 * Series.generator(1, 2)
    assert sr_commutator(a, a, 2) == 1
    assert sr_commutator(x1, x2, 1) == 1


def test_commutator_of_zero():
    with pytest.raises(ZeroInversion):
        sr_commutator(Series.zero(), x1, 1)


def test_monomial_inverses_are_exact():
    inverse = sr_inv(x1, 3)
    assert inverse.is_exact()
    assert inverse == Series.generator(1, -1)
    expected = Series.monomial(word(x1=-1), FieldElem({(1,): Fraction(-1, 2)}))
    assert sr_inv(s1 * x1, 5) == expected


def test_geometric_series_inverse():
    inverse = sr_inv(1 - x1, 2)
    assert inverse.trunc == 2
    assert inverse == Series({IDENTITY: 1, word(x1=1): 1, word(x1=2): 1}, trunc=2)
    assert inversion_residual(1 - x1, 2) == -Series.generator(1, 3)
    assert check_inversion_contract(1 - x1, 2)


def test_inverse_of_zero():
    with pytest.raises(ZeroInversion):
        sr_inv(Series.zero(), 1)


def test_truncation_propagates_and_does_not_mix():
    truncated = sr_inv(1 - x1, 2)
    assert (truncated * x2).trunc == 2
    assert (truncated + sr_inv(1 - x2, 3)).trunc == 2
    with pytest.raises(MixedTruncation):
        assert truncated == Series.one()


def test_negative_power_of_non_monomial_needs_depth():
    with pytest.raises(NeedsDepth):
        (1 - x1) ** -1
    assert x1 ** -2 == Series.generator(1, -2)


def test_center_predicate_examples():
    assert sr_is_central(3 * Series.generator(1, 2))
    assert not sr_is_central(s1 * Series.generator(1, 2))
    assert not sr_is_central(x1)


def test_window_test_examples():
    assert sr_commutation_window_test(3 * Series.generator(1, 2))
    assert not sr_commutation_window_test(x1)
    assert not sr_commutation_window_test(s1)


def test_center_checks_reject_truncated_input():
    with pytest.raises(TruncatedInput):
        sr_is_central(sr_inv(1 - x1, 2))
    with pytest.raises(TruncatedInput):
        sr_commutation_window_test(sr_inv(1 - x1, 2))


def test_gamma_series():
    assert gamma_series(GammaSpec(1)) == Series.generator(1, -1)
    gamma3 = gamma_series(GammaSpec(3))
    assert gamma3.support() == [word(x1=-1), word(x2=-1), word(x3=-1)]
    support = gamma_series(GammaSpec(2)).support()
    assert support == sorted(support)
    with pytest.raises(BadArguments):
        GammaSpec(0)


def test_gamma_coefficient_witness():
    assert gamma_coefficient_witness(2, 1) == 1
    assert gamma_series(GammaSpec(2)).coefficient(word(x1=-1, x2=-1)).is_zero()
    assert gamma_coefficient_witness(3, 2) == 2
    assert gamma_coefficient_witness(5, 4) == 24
    with pytest.raises(BadArguments):
        gamma_coefficient_witness(2, 3)


def test_gamma_witness_record():
    witness = gamma_witness(5, 3)
    assert witness.coefficient == 6 == witness.expected
    assert witness.absent_below_degree
    assert witness.to_dict()['kind'] == 'gamma_witness'


@pytest.mark.parametrize('N, n, rank', [(3, 0, 1), (3, 2, 3), (5, 4, 5)])
def test_gamma_independence(N, n, rank):
    assert gamma_independence_probe(N, n) == rank


def test_gamma_tail():
    assert gamma_tail_series(2, 4) == Series.generator(3, -1) + Series.generator(4, -1)
    assert gamma_tail_check(2, 5)
    assert gamma_tail_check(0, 3)
    with pytest.raises(BadArguments):
        gamma_tail_series(4, 2)


def test_text_form():
    assert gamma_series(GammaSpec(2)).to_text() == '1*x1^-1 + 1*x2^-1'
    assert Series.scalar(3).to_text() == '3*e'
    assert Series({word(x1=1): FieldElem({(): 1, (1,): -1})}).to_text() == '(1 - 1*s1)*x1'
    assert (-2 * x1 + 1).to_text() == '1*e - 2*x1'
    assert Series.zero().to_text() == '0'


def test_record_round_trip():
    value = sr_inv(1 - s1 * x1, 2)
    restored = Series.from_record(value.to_record())
    assert restored.trunc == 2
    assert restored == value


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert Series.one() * a == a == a * Series.one()


@settings(max_examples=60, deadline=None)
@given(group_words(), field_elems())
def test_twisting_law(x, a):
    lhs = Series.monomial(x) * Series.scalar(a)
    assert lhs == Series.monomial(x, a.apply_auto(x.parity()))


def test_power_twisting_relations():
    for i in range(1, 9):
        for j in range(1, 9):
            root = Series.sqrt(j)
            for n in range(1, 7):
                power = Series.generator(i, n)
                sign = -1 if i == j and n % 2 else 1
                assert power * root == sign * (root * power)


@settings(max_examples=30, deadline=None)
@given(nonzero_series())
def test_inversion_contract(a):
    for depth in (1, 2, 4):
        assert check_inversion_contract(a, depth)
