"""Seeded random generators for the verification suites.

Every generator takes an explicit ``random.Random`` so that a trial is a pure
function of its seed string.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import List, Optional

from field_tower import DEFAULT_TABLE, FieldElem, PrimeTable
from finite_algebra import AlgebraElem, AlgebraParams, alg_norm
from herstein_lab import DEFAULT_PARAMS, QuatElem
from ordered_group import GroupWord
from twisted_series import Series

COEFF_BOUND = 5


def trial_rng(seed: int, suite: str, check: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{check}:{trial}")


def random_rational(rng: random.Random, bound: int = COEFF_BOUND, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if value or not nonzero:
            return value


def _masks(level: int) -> List[frozenset]:
    indices = range(1, level + 1)
    return [frozenset(combo) for size in range(level + 1) for combo in combinations(indices, size)]


def random_field_elem(rng: random.Random, level: int, table: PrimeTable = DEFAULT_TABLE,
                      max_terms: int = 4, rational_bias: float = 0.0) -> FieldElem:
    """With probability ``rational_bias`` the result is rational."""
    if rng.random() < rational_bias:
        return FieldElem.rational(random_rational(rng), table)
    masks = _masks(level)
    chosen = rng.sample(masks, min(len(masks), rng.randint(1, max_terms)))
    return FieldElem({tuple(mask): random_rational(rng, nonzero=True) for mask in chosen}, table)


def random_nonzero_field_elem(rng: random.Random, level: int, table: PrimeTable = DEFAULT_TABLE) -> FieldElem:
    while True:
        value = random_field_elem(rng, level, table)
        if not value.is_zero():
            return value


def random_group_word(rng: random.Random, max_index: int = 4, max_exponent: int = 3,
                      even: bool = False) -> GroupWord:
    exponents = {}
    for index in rng.sample(range(1, max_index + 1), rng.randint(0, max_index)):
        exponent = rng.randint(-max_exponent, max_exponent)
        exponents[index] = 2 * exponent if even else exponent
    return GroupWord(exponents)


def random_series(rng: random.Random, table: PrimeTable = DEFAULT_TABLE, max_terms: int = 6,
                  level: int = 4, max_exponent: int = 3, central: bool = False) -> Series:
    """Exact series; ``central`` restricts to square words with rational coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        word = random_group_word(rng, level, max_exponent, even=central)
        if central:
            coeff = FieldElem.rational(random_rational(rng, nonzero=True), table)
        else:
            coeff = random_field_elem(rng, level, table, max_terms=3, rational_bias=0.3)
        terms[word] = coeff
    return Series(terms, table=table)


def random_center_candidate(rng: random.Random, table: PrimeTable = DEFAULT_TABLE) -> Series:
    """A third central, a third central plus one stray term, a third unconstrained."""
    kind = rng.randrange(3)
    if kind == 0:
        return random_series(rng, table, central=True)
    if kind == 1:
        stray = random_series(rng, table, max_terms=1)
        return random_series(rng, table, max_terms=5, central=True) + stray
    return random_series(rng, table)


def random_nonzero_series(rng: random.Random, table: PrimeTable = DEFAULT_TABLE, max_terms: int = 4,
                          level: int = 3) -> Series:
    while True:
        series = random_series(rng, table, max_terms=max_terms, level=level, max_exponent=2)
        if not series.is_zero():
            return series


def random_window_series(rng: random.Random, n: int, table: PrimeTable = DEFAULT_TABLE) -> Series:
    """Exact series that only involve indices ≤ n."""
    return random_series(rng, table, max_terms=3, level=n, max_exponent=2)


def random_algebra_elem(rng: random.Random, params: AlgebraParams, density: Optional[float] = None) -> AlgebraElem:
    density = 1.0 if density is None else density
    coords = [random_rational(rng) if rng.random() < density else Fraction(0) for _ in range(params.dim)]
    return AlgebraElem(params, tuple(coords))


def random_invertible_algebra_elem(rng: random.Random, params: AlgebraParams) -> AlgebraElem:
    while True:
        elem = random_algebra_elem(rng, params)
        if alg_norm(params, elem) != 0:
            return elem


def random_quat(rng: random.Random, params=DEFAULT_PARAMS) -> QuatElem:
    return QuatElem(tuple(random_rational(rng) for _ in range(4)), params)


def random_nonzero_quat(rng: random.Random, params=DEFAULT_PARAMS) -> QuatElem:
    while True:
        value = random_quat(rng, params)
        if value.is_invertible():
            return value
