"""Verification suites: deterministic checks plus seeded randomized trials.

A check returns ``None`` when it holds and a short failure message otherwise;
an exception raised inside a check also counts as a failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Tuple

import linalg
from errors import BadArguments
from expr_parser import eval_text
from field_tower import FieldElem, PrimeTable, fixed_by_all
from finite_algebra import (
    AlgebraElem,
    AlgebraParams,
    alg_basis_rank,
    alg_centralizer_dimension,
    alg_commutator,
    alg_norm,
    alg_regular_matrix,
    alg_torsion_order,
    specialize_series,
)
from herstein_lab import (
    ConclusionBranch,
    QuatElem,
    SubringSpec,
    commutator_radical_probe,
    lemma34_exponent_check,
    quat_radical_exponent,
    subcase12_check,
    thm35_conclusion_probe,
    thm35_identity_check,
)
from ordered_group import GroupWord, Ordering
from twisted_series import (
    GammaSpec,
    Series,
    check_inversion_contract,
    gamma_coefficient_witness,
    gamma_independence_probe,
    gamma_series,
    gamma_tail_check,
    sr_commutation_window_test,
    sr_commutator,
    sr_is_central,
)

from . import sampling

CONTRACT_DEPTH = 4
Outcome = Optional[str]


@dataclass(frozen=True)
class SuiteContext:
    table: PrimeTable
    depth: int
    seed: int
    trials: Optional[int] = None


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[random.Random, SuiteContext], Outcome]
    trials: Optional[int] = None

    @property
    def randomized(self) -> bool:
        return self.trials is not None

    def trial_count(self, override: Optional[int]) -> int:
        if not self.randomized:
            return 1
        return override if override is not None else self.trials


def _expect(condition: bool, message: str) -> Outcome:
    return None if condition else message


def _first_failure(*outcomes: Outcome) -> Outcome:
    for outcome in outcomes:
        if outcome:
            return outcome
    return None


# -- field -----------------------------------------------------------------

def _radical_squares(rng, ctx: SuiteContext) -> Outcome:
    for index in range(1, 9):
        root = FieldElem.sqrt(index, ctx.table)
        if root * root != ctx.table.prime(index):
            return f"s{index}^2 != p{index}"
    return None


def _field_axioms(rng, ctx: SuiteContext) -> Outcome:
    level = rng.randint(1, 6)
    a, b, c = (sampling.random_field_elem(rng, level, ctx.table) for _ in range(3))
    outcome = _first_failure(
        _expect((a * b) * c == a * (b * c), "multiplication is not associative"),
        _expect(a * b == b * a, "multiplication is not commutative"),
        _expect(a * (b + c) == a * b + a * c, "distributivity fails"),
        _expect((a + b) + c == a + (b + c), "addition is not associative"),
    )
    if outcome or a.is_zero():
        return outcome
    return _expect(a * a.inverse() == 1, f"a * inv(a) != 1 for a = {a}")


def _automorphisms(rng, ctx: SuiteContext) -> Outcome:
    a = sampling.random_field_elem(rng, 6, ctx.table)
    for i in range(1, 9):
        if a.apply_auto({i}).apply_auto({i}) != a:
            return f"f{i} is not an involution on {a}"
        for j in range(1, 9):
            if a.apply_auto({j}).apply_auto({i}) != a.apply_auto({i}).apply_auto({j}):
                return f"f{i} and f{j} do not commute on {a}"
    return None


def _fixed_field(rng, ctx: SuiteContext) -> Outcome:
    a = sampling.random_field_elem(rng, 4, ctx.table, rational_bias=0.3)
    return _expect(fixed_by_all(a, 4) == a.is_rational(), f"fixed-field test disagrees with rationality for {a}")


def _auto_homomorphism(rng, ctx: SuiteContext) -> Outcome:
    parity = {index for index in range(1, 5) if rng.random() < 0.5}
    a = sampling.random_field_elem(rng, 4, ctx.table)
    b = sampling.random_field_elem(rng, 4, ctx.table)
    return _first_failure(
        _expect((a + b).apply_auto(parity) == a.apply_auto(parity) + b.apply_auto(parity), "sum not preserved"),
        _expect((a * b).apply_auto(parity) == a.apply_auto(parity) * b.apply_auto(parity), "product not preserved"),
    )


# -- order -----------------------------------------------------------------

_REVERSED = {Ordering.LT: Ordering.GT, Ordering.GT: Ordering.LT, Ordering.EQ: Ordering.EQ}


def _order_examples(rng, ctx: SuiteContext) -> Outcome:
    return _first_failure(
        _expect(GroupWord.generator(1, -1).compare(GroupWord.generator(2, -1)) is Ordering.LT, "x1^-1 < x2^-1"),
        _expect(GroupWord().compare(GroupWord()) is Ordering.EQ, "e = e"),
        _expect(GroupWord({1: 1, 2: -5}).compare(GroupWord({1: 1})) is Ordering.LT, "(1,-5) < (1,0)"),
    )


def _order_laws(rng, ctx: SuiteContext) -> Outcome:
    x, y, z = (sampling.random_group_word(rng) for _ in range(3))
    xy, yz = x.compare(y), y.compare(z)
    outcome = _first_failure(
        _expect(y.compare(x) is _REVERSED[xy], f"antisymmetry fails for {x}, {y}"),
        _expect((xy is Ordering.EQ) == (x == y), f"EQ disagrees with equality for {x}, {y}"),
    )
    if outcome:
        return outcome
    if xy is not Ordering.GT and yz is not Ordering.GT and x.compare(z) is Ordering.GT:
        return f"transitivity fails for {x} <= {y} <= {z}"
    if xy is Ordering.LT and not (x * z < y * z):
        return f"translation by {z} does not preserve {x} < {y}"
    return None


def _parity_and_squares(rng, ctx: SuiteContext) -> Outcome:
    x, y = sampling.random_group_word(rng), sampling.random_group_word(rng)
    sx, sy = x * x, sampling.random_group_word(rng, even=True)
    return _first_failure(
        _expect((x * y).parity() == x.parity() ^ y.parity(), "parity is not a homomorphism"),
        _expect(sx.in_squares(), f"{sx} should be a square"),
        _expect((sx * sy).in_squares() and sy.inverse().in_squares(), "H is not a subgroup"),
        _expect(not x.in_squares() or not x.parity(), f"{x} lies in H but has parity"),
    )


# -- series ----------------------------------------------------------------

def _twisting_relations(rng, ctx: SuiteContext) -> Outcome:
    for i in range(1, 9):
        for j in range(1, 9):
            root = Series.sqrt(j, ctx.table)
            if Series.generator(i, table=ctx.table) * Series.generator(j, table=ctx.table) != \
                    Series.generator(j, table=ctx.table) * Series.generator(i, table=ctx.table):
                return f"x{i} and x{j} do not commute"
            if Series.sqrt(i, ctx.table) * root != root * Series.sqrt(i, ctx.table):
                return f"s{i} and s{j} do not commute"
            for n in range(1, 7):
                power = Series.generator(i, n, ctx.table)
                sign = -1 if i == j and n % 2 else 1
                if power * root != sign * (root * power):
                    return f"x{i}^{n} * s{j} has the wrong sign"
    return None


def _series_examples(rng, ctx: SuiteContext) -> Outcome:
    x1, s1 = Series.generator(1, table=ctx.table), Series.sqrt(1, ctx.table)
    p1 = ctx.table.prime(1)
    inverse = (s1 * x1).inverse(1)
    return _first_failure(
        _expect(x1 * s1 == -(s1 * x1), "x1*s1 != -s1*x1"),
        _expect((s1 * x1) * (s1 * x1) == -p1 * Series.generator(1, 2, ctx.table), "(s1*x1)^2 != -p1*x1^2"),
        _expect(inverse.is_exact() and inverse == Series.monomial(
            GroupWord.generator(1, -1), FieldElem({(1,): Fraction(-1, p1)}, ctx.table), ctx.table),
            "inv(s1*x1) is wrong"),
        _expect(sr_commutator(x1, s1, 1) == -1, "comm(x1, s1) != -1"),
    )


def _twisting_law(rng, ctx: SuiteContext) -> Outcome:
    word = sampling.random_group_word(rng)
    a = sampling.random_field_elem(rng, 4, ctx.table)
    lhs = Series.monomial(word, 1, ctx.table) * Series.scalar(a, ctx.table)
    rhs = Series.monomial(word, a.apply_auto(word.parity()), ctx.table)
    return _expect(lhs == rhs, f"x a != Phi_x(a) x for x = {word}, a = {a}")


def _ring_axioms(rng, ctx: SuiteContext) -> Outcome:
    a, b, c = (sampling.random_series(rng, ctx.table, max_terms=3, level=3, max_exponent=2) for _ in range(3))
    one = Series.one(ctx.table)
    return _first_failure(
        _expect((a * b) * c == a * (b * c), "series multiplication is not associative"),
        _expect(a * (b + c) == a * b + a * c, "left distributivity fails"),
        _expect((a + b) * c == a * c + b * c, "right distributivity fails"),
        _expect(one * a == a and a * one == a, "1 is not a two-sided identity"),
    )


def _inversion_contract(rng, ctx: SuiteContext) -> Outcome:
    a = sampling.random_nonzero_series(rng, ctx.table)
    word, coeff = a.leading()
    monomial = Series.monomial(word, coeff, ctx.table)
    return _first_failure(
        _expect(check_inversion_contract(a, CONTRACT_DEPTH), f"residual below the floor for {a}"),
        _expect(monomial * monomial.inverse(CONTRACT_DEPTH) == 1, f"monomial inverse of {monomial} is not exact"),
    )


def _round_trip(rng, ctx: SuiteContext) -> Outcome:
    value = sampling.random_series(rng, ctx.table)
    text = value.to_text()
    return _expect(eval_text(text, ctx.table, ctx.depth) == value, f"round trip fails for {text}")


# -- center ----------------------------------------------------------------

def _center_equivalence(rng, ctx: SuiteContext) -> Outcome:
    a = sampling.random_center_candidate(rng, ctx.table)
    return _expect(sr_is_central(a) == sr_commutation_window_test(a), f"center tests disagree on {a}")


def _center_examples(rng, ctx: SuiteContext) -> Outcome:
    x1_squared = Series.generator(1, 2, ctx.table)
    return _first_failure(
        _expect(sr_is_central(3 * x1_squared), "3*x1^2 is central"),
        _expect(not sr_is_central(Series.sqrt(1, ctx.table) * x1_squared), "s1*x1^2 is not central"),
        _expect(not sr_commutation_window_test(Series.generator(1, table=ctx.table)), "x1 is not central"),
        _expect(not sr_commutation_window_test(Series.sqrt(1, ctx.table)), "s1 is not central"),
    )


# -- gamma -----------------------------------------------------------------

def _gamma_witness(rng, ctx: SuiteContext) -> Outcome:
    for n in range(1, 6):
        for N in range(n, 7):
            value = gamma_coefficient_witness(N, n, ctx.table)
            if value != factorial(n):
                return f"coefficient for N={N}, n={n} is {value}, expected {factorial(n)}"
    return None


def _gamma_independence(rng, ctx: SuiteContext) -> Outcome:
    for N in range(1, 6):
        for n in range(0, min(N, 4) + 1):
            rank = gamma_independence_probe(N, n, ctx.table)
            if rank != n + 1:
                return f"rank for N={N}, n={n} is {rank}, expected {n + 1}"
    return None


def _gamma_tail(rng, ctx: SuiteContext) -> Outcome:
    for N in range(1, 7):
        for n in range(0, N + 1):
            if not gamma_tail_check(n, N, ctx.table):
                return f"tail check fails for n={n}, N={N}"
        support = gamma_series(GammaSpec(N), ctx.table).support()
        if support != sorted(support):
            return f"gamma_{N} support is not ascending"
    return None


# -- algebra ---------------------------------------------------------------

def parameter_sets(n: int, table: PrimeTable) -> List[Tuple[str, AlgebraParams]]:
    return [
        ("primes", AlgebraParams.default(n, table)),
        ("definite", AlgebraParams(n, (-1,) * n, (-1,) * n)),
        ("split", AlgebraParams(n, (1,) * n, (-1,) * n)),
    ]


def _centralizer(rng, ctx: SuiteContext) -> Outcome:
    if alg_centralizer_dimension(AlgebraParams(0)) != 1:
        return "centralizer of A_0 is not 1-dimensional"
    for n in (1, 2, 3):
        for label, params in parameter_sets(n, ctx.table):
            dimension = alg_centralizer_dimension(params)
            if dimension != 1:
                return f"centralizer of A_{n} ({label}) has dimension {dimension}"
    return None


def _basis_rank(rng, ctx: SuiteContext) -> Outcome:
    for n in (1, 2, 3):
        params = AlgebraParams.default(n, ctx.table)
        if alg_basis_rank(params) != params.dim:
            return f"basis of A_{n} is not independent"
    return None


def _torsion(rng, ctx: SuiteContext) -> Outcome:
    params = AlgebraParams.default(1, ctx.table)
    minus_one = AlgebraElem.scalar(params, -1)
    commutator = alg_commutator(params, AlgebraElem.u(params, 1), AlgebraElem.v(params, 1))
    return _first_failure(
        _expect(alg_torsion_order(params, minus_one, 8) == 2, "-1 should have order 2"),
        _expect(commutator == minus_one, "comm(u1, v1) should be -1"),
        _expect(alg_torsion_order(params, commutator, 8) == 2, "comm(u1, v1) should have order 2"),
        _expect(alg_torsion_order(params, AlgebraElem.scalar(params, 2), 16) is None, "2 is not torsion"),
    )


def _commutator_norm(rng, ctx: SuiteContext) -> Outcome:
    params = AlgebraParams(1, (-1,), (-1,))
    g = sampling.random_invertible_algebra_elem(rng, params)
    h = sampling.random_invertible_algebra_elem(rng, params)
    norm = alg_norm(params, alg_commutator(params, g, h))
    return _expect(norm == 1, f"commutator norm is {norm}")


def _algebra_associativity(rng, ctx: SuiteContext) -> Outcome:
    n = rng.choice((1, 2, 3))
    params = AlgebraParams.default(n, ctx.table)
    density = 1.0 if n < 3 else 0.25
    x, y, z = (sampling.random_algebra_elem(rng, params, density) for _ in range(3))
    return _first_failure(
        _expect((x * y) * z == x * (y * z), f"A_{n} multiplication is not associative"),
        _expect(x * (y + z) == x * y + x * z, f"A_{n} distributivity fails"),
    )


def _regular_homomorphism(rng, ctx: SuiteContext) -> Outcome:
    params = AlgebraParams.default(2, ctx.table)
    x = sampling.random_algebra_elem(rng, params, 0.5)
    y = sampling.random_algebra_elem(rng, params, 0.5)
    product = alg_regular_matrix(params, x * y)
    composed = linalg.matmul(alg_regular_matrix(params, x), alg_regular_matrix(params, y))
    return _first_failure(
        _expect(product == composed, "left regular representation is not multiplicative"),
        _expect(alg_norm(params, x * y) == alg_norm(params, x) * alg_norm(params, y), "norm is not multiplicative"),
    )


def _specialization(rng, ctx: SuiteContext) -> Outcome:
    n = rng.choice((1, 2))
    params = AlgebraParams.default(n, ctx.table)
    s = sampling.random_window_series(rng, n, ctx.table)
    t = sampling.random_window_series(rng, n, ctx.table)
    lhs = specialize_series(params, s * t)
    rhs = specialize_series(params, s) * specialize_series(params, t)
    return _expect(lhs == rhs, f"specialization is not multiplicative for {s} and {t}")


# -- herstein --------------------------------------------------------------

def _thm35_pair(rng) -> Tuple[QuatElem, QuatElem]:
    one = QuatElem.scalar(1)
    while True:
        a, b = sampling.random_nonzero_quat(rng), sampling.random_nonzero_quat(rng)
        if a != one and not (a + b).is_zero() and (b + 1).is_invertible():
            return a, b


def _thm35(m: int) -> Callable[[random.Random, SuiteContext], Outcome]:
    def run(rng, ctx: SuiteContext) -> Outcome:
        a, b = _thm35_pair(rng)
        if not thm35_identity_check(a, b, m):
            return f"identity fails for a = {a}, b = {b}"
        thm35_conclusion_probe(a, b, m)
        return None

    return run


def _thm35_examples(rng, ctx: SuiteContext) -> Outcome:
    u, v = QuatElem.u(), QuatElem.v()
    two = QuatElem.scalar(2)
    return _first_failure(
        _expect(thm35_identity_check(u, v, 2), "identity fails for a = u, b = v"),
        _expect(thm35_conclusion_probe(u, v, 2) is ConclusionBranch.COMMUTATION, "a = u, b = v should commute"),
        _expect(thm35_identity_check(two, v, 5), "identity fails for central a"),
        _expect(thm35_conclusion_probe(two, v, 5) is ConclusionBranch.COMMUTATION, "central a should commute"),
    )


def _quat_inverse_law(rng, ctx: SuiteContext) -> Outcome:
    x, y = sampling.random_nonzero_quat(rng), sampling.random_quat(rng)
    one = QuatElem.scalar(1)
    return _first_failure(
        _expect(x * x.inverse() == one and x.inverse() * x == one, f"inverse law fails for {x}"),
        _expect((x * y).reduced_norm() == x.reduced_norm() * y.reduced_norm(), "reduced norm is not multiplicative"),
    )


def _quat_norm_cross_check(rng, ctx: SuiteContext) -> Outcome:
    x = sampling.random_quat(rng)
    elem = x.to_algebra_elem()
    return _expect(alg_norm(elem.params, elem) == x.reduced_norm() ** 2, f"regular norm != N^2 for {x}")


def _radical_examples(rng, ctx: SuiteContext) -> Outcome:
    u, v = QuatElem.u(), QuatElem.v()
    one = QuatElem.scalar(1)
    return _first_failure(
        _expect(quat_radical_exponent(u, SubringSpec.CENTER, 4) == 2, "u^2 is central"),
        _expect(quat_radical_exponent(one + u, SubringSpec.CENTER, 20) == 4, "(1+u)^4 = -4"),
        _expect(quat_radical_exponent(one + 2 * u, SubringSpec.CENTER, 20) is None, "1+2u is not radical"),
        _expect(quat_radical_exponent(QuatElem.scalar(Fraction(3, 2)), SubringSpec.FIELD_V, 3) == 1, "3/2 lies in Q(v)"),
        _expect(quat_radical_exponent(v, SubringSpec.FIELD_U, 4) == 2, "v^2 lies in Q(u)"),
    )


def _commuting_with_power(rng, base: QuatElem) -> QuatElem:
    while True:
        candidate = sampling.random_rational(rng) + sampling.random_rational(rng) * base
        if candidate.is_invertible():
            return candidate


def _lemma34(rng, ctx: SuiteContext) -> Outcome:
    a = sampling.random_nonzero_quat(rng)
    r, s = rng.randint(1, 3), rng.randint(1, 3)
    x = _commuting_with_power(rng, a ** r)
    y = _commuting_with_power(rng, a ** s)
    return _expect(lemma34_exponent_check(a, x, y, r, s), f"exponent check fails for a = {a}")


def _lemma34_examples(rng, ctx: SuiteContext) -> Outcome:
    u, v = QuatElem.u(), QuatElem.v()
    if not lemma34_exponent_check(u, v, QuatElem.uv(), 2, 2):
        return "a = u, x = v, y = uv, r = s = 2 should hold"
    try:
        lemma34_exponent_check(u, v, v, 1, 1)
    except BadArguments:
        return None
    return "u does not commute with v; hypotheses should be rejected"


def _subcase12(rng, ctx: SuiteContext) -> Outcome:
    a = sampling.random_nonzero_quat(rng)
    r, s = rng.randint(1, 3), rng.randint(1, 3)
    x = _commuting_with_power(rng, a ** s)
    b = x.inverse() * _commuting_with_power(rng, a ** r)
    return _expect(subcase12_check(a, b, x, r, s), f"a^(rs) does not commute with b for a = {a}")


def _commutator_probe(rng, ctx: SuiteContext) -> Outcome:
    g, h = sampling.random_nonzero_quat(rng), sampling.random_nonzero_quat(rng)
    probe = commutator_radical_probe(g, h, 12)
    if probe.radical_exponent is None:
        return None
    order = probe.torsion_order
    return _expect(order is not None and (2 * probe.radical_exponent) % order == 0,
                   f"radical commutator {probe.commutator} has order {order}")


def _commutator_probe_example(rng, ctx: SuiteContext) -> Outcome:
    probe = commutator_radical_probe(QuatElem.u(), QuatElem.v(), 4)
    return _expect(probe.radical_exponent == 1 and probe.central_value == -1 and probe.torsion_order == 2,
                   "comm(u, v) should be -1 of order 2")


SUITES: Dict[str, List[Check]] = {
    "field": [
        Check("radical squares", _radical_squares),
        Check("field axioms", _field_axioms, 100),
        Check("automorphisms", _automorphisms, 100),
        Check("fixed field", _fixed_field, 100),
        Check("automorphism homomorphism", _auto_homomorphism, 100),
    ],
    "order": [
        Check("order examples", _order_examples),
        Check("order laws", _order_laws, 1000),
        Check("parity and squares", _parity_and_squares, 200),
    ],
    "series": [
        Check("twisting relations", _twisting_relations),
        Check("series examples", _series_examples),
        Check("twisting law", _twisting_law, 100),
        Check("ring axioms", _ring_axioms, 100),
        Check("inversion contract", _inversion_contract, 50),
        Check("round trip", _round_trip, 200),
    ],
    "center": [
        Check("center examples", _center_examples),
        Check("center equivalence", _center_equivalence, 200),
    ],
    "gamma": [
        Check("coefficient witness", _gamma_witness),
        Check("independence", _gamma_independence),
        Check("tail", _gamma_tail),
    ],
    "algebra": [
        Check("centralizer", _centralizer),
        Check("basis rank", _basis_rank),
        Check("torsion", _torsion),
        Check("commutator norm", _commutator_norm, 100),
        Check("associativity", _algebra_associativity, 30),
        Check("regular homomorphism", _regular_homomorphism, 30),
        Check("specialization", _specialization, 50),
    ],
    "herstein": [
        Check("identity examples", _thm35_examples),
        *(Check(f"subcase identity m={m}", _thm35(m), 100) for m in range(1, 6)),
        Check("inverse law", _quat_inverse_law, 200),
        Check("norm cross-check", _quat_norm_cross_check, 50),
        Check("radical examples", _radical_examples),
        Check("exponent examples", _lemma34_examples),
        Check("exponent check", _lemma34, 100),
        Check("second subcase", _subcase12, 100),
        Check("commutator example", _commutator_probe_example),
        Check("commutator probe", _commutator_probe, 100),
    ],
}
