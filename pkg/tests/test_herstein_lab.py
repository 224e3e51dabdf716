from fractions import Fraction

import pytest
from hypothesis import given, settings

from errors import BadArguments, ZeroInversion
from finite_algebra import alg_norm
from herstein_lab import (
    ConclusionBranch,
    QuatElem,
    SubringSpec,
    commutator_radical_probe,
    lemma34_exponent_check,
    quat_commutator,
    quat_radical_exponent,
    quat_reduced_norm,
    subcase12_check,
    thm35_conclusion_probe,
    thm35_identity_check,
)
from strategies import nonzero_quats, quats, scalar_quat

u, v, uv = QuatElem.u(), QuatElem.v(), QuatElem.uv()
one = scalar_quat(1)


def test_hamilton_relations():
    assert u * u == scalar_quat(-1)
    assert v * v == scalar_quat(-1)
    assert u * v == uv
    assert v * u == -uv
    assert uv * uv == scalar_quat(-1)


def test_general_parameters():
    params = (Fraction(2), Fraction(3))
    gen_u, gen_v = QuatElem.u(params), QuatElem.v(params)
    assert gen_u * gen_u == QuatElem.scalar(2, params)
    assert (gen_u * gen_v) * (gen_u * gen_v) == QuatElem.scalar(-6, params)
    with pytest.raises(BadArguments):
        gen_u + u
    with pytest.raises(BadArguments):
        QuatElem((1, 0, 0, 0), (0, 1))


def test_reduced_norm_and_inverse():
    x = QuatElem((1, 2, 3, 4))
    assert quat_reduced_norm(x) == 30
    assert x * x.inverse() == one
    assert x ** -2 == (x * x).inverse()
    with pytest.raises(ZeroInversion):
        QuatElem((0, 0, 0, 0)).inverse()
    split = QuatElem((1, 1, 0, 0), (1, -1))
    assert not split.is_invertible()


def test_reduced_norm_matches_regular_norm():
    x = QuatElem((1, 2, Fraction(1, 2), -1), (Fraction(2), Fraction(-3)))
    assert alg_norm(x.to_algebra_elem().params, x.to_algebra_elem()) == x.reduced_norm() ** 2


def test_subrings():
    assert SubringSpec.CENTER.contains(scalar_quat(3))
    assert not SubringSpec.CENTER.contains(u)
    assert SubringSpec.FIELD_U.contains(1 + u)
    assert not SubringSpec.FIELD_U.contains(v)
    assert SubringSpec.FIELD_V.contains(2 - v)
    assert SubringSpec('Q(u)') is SubringSpec.FIELD_U


def test_radical_exponents():
    # (1+u)^2 = 2u, (1+u)^4 = -4
    assert quat_radical_exponent(1 + u, SubringSpec.CENTER, 20) == 4
    assert quat_radical_exponent(1 + u, SubringSpec.CENTER, 3) is None
    assert quat_radical_exponent(1 + u, SubringSpec.FIELD_U, 20) == 1
    assert quat_radical_exponent(1 + 2 * u, SubringSpec.CENTER, 20) is None
    assert quat_radical_exponent(u, SubringSpec.CENTER, 20) == 2
    assert quat_radical_exponent(u + v, SubringSpec.FIELD_V, 5) == 2


def test_identity_on_examples():
    assert thm35_identity_check(u, 2 * v, 1)
    assert thm35_identity_check(1 + u, v, 3)
    assert thm35_identity_check(one, v, 2)


def test_identity_rejects_degenerate_input():
    with pytest.raises(BadArguments):
        thm35_identity_check(u, v, 0)
    with pytest.raises(BadArguments):
        thm35_identity_check(u, -u, 1)
    with pytest.raises(BadArguments):
        thm35_identity_check(u, scalar_quat(-1), 1)


def test_conclusion_branches():
    assert thm35_conclusion_probe(u, 2 * v, 1) is ConclusionBranch.B_SOLVABLE
    assert thm35_conclusion_probe(scalar_quat(2), v, 3) is ConclusionBranch.COMMUTATION
    with pytest.raises(BadArguments):
        thm35_conclusion_probe(one, v, 1)


def test_exponent_multiplication():
    assert lemma34_exponent_check(u, 1 + u, v, 1, 2)
    assert lemma34_exponent_check(1 + u, u, 2 + v, 3, 4)
    with pytest.raises(BadArguments, match='a\\^1 does not commute with x'):
        lemma34_exponent_check(u, v, v, 1, 2)
    with pytest.raises(BadArguments):
        lemma34_exponent_check(u, u, v, 0, 2)


def test_second_subcase():
    assert subcase12_check(u, v, v, 1, 2)
    with pytest.raises(BadArguments):
        subcase12_check(u, v, u, 1, 2)


def test_commutator_probe_of_generators():
    assert quat_commutator(u, v) == scalar_quat(-1)
    probe = commutator_radical_probe(u, v, 10)
    assert probe.radical_exponent == 1
    assert probe.central_value == -1
    assert probe.torsion_order == 2
    assert probe.to_dict()['kind'] == 'commutator_probe'


def test_commutator_probe_with_longer_radical():
    # (1+u) v (1+u)^-1 v^-1 = u
    probe = commutator_radical_probe(1 + u, v, 10)
    assert probe.commutator == u
    assert probe.radical_exponent == 2
    assert probe.torsion_order == 4


def test_commutator_probe_without_radical():
    probe = commutator_radical_probe(1 + 2 * u, v, 6)
    assert probe.radical_exponent is None
    assert probe.torsion_order is None


def test_text():
    assert QuatElem((1, 0, -1, 2)).to_text() == '1 + -1*v + 2*uv'
    assert QuatElem((0, 0, 0, 0)).to_text() == '0'


@settings(max_examples=60, deadline=None)
@given(nonzero_quats)
def test_inverse_law(x):
    assert x * x.inverse() == one == x.inverse() * x
    assert (x * x.conjugate()).is_central()


@settings(max_examples=60, deadline=None)
@given(quats, quats)
def test_norm_is_multiplicative(x, y):
    assert quat_reduced_norm(x * y) == quat_reduced_norm(x) * quat_reduced_norm(y)


@settings(max_examples=40, deadline=None)
@given(nonzero_quats, nonzero_quats)
def test_identity_holds_whenever_defined(a, b):
    if (a + b).is_zero() or not (a + b).is_invertible() or not (b + 1).is_invertible():
        return
    for m in (1, 2, 3):
        assert thm35_identity_check(a, b, m)


@settings(max_examples=40, deadline=None)
@given(nonzero_quats, nonzero_quats)
def test_commutators_have_unit_norm(g, h):
    assert quat_reduced_norm(quat_commutator(g, h)) == 1
