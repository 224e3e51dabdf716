"""
扭群代数 K[G, Φ]：有限支撑级数、扭卷积、按深度截断的求逆、
交换子、中心判定以及 γ 相关实验
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple, Union

import linalg
from config import Config
from errors import BadArguments, InvariantViolation, MixedTruncation, NeedsDepth, TruncatedInput, ZeroInversion
from field_tower import DEFAULT_TABLE, FieldElem, PrimeTable
from ordered_group import IDENTITY, GroupWord

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, FieldElem]


def _merge_trunc(left: Optional[int], right: Optional[int]) -> Optional[int]:
    if left is None:
        return right
    if right is None:
        return left
    return min(left, right)


class Series:
    """Σ a_x·x，x ∈ G，a_x ∈ K，有限支撑；trunc 记录部分 Neumann 展开的深度"""

    __slots__ = ('_terms', 'trunc', 'table')

    def __init__(self, terms: Optional[Mapping[GroupWord, Scalar]] = None, trunc: Optional[int] = None,
                 table: PrimeTable = DEFAULT_TABLE):
        if trunc is not None and trunc < 1:
            raise BadArguments("truncation depth must be positive")
        collected: Dict[GroupWord, FieldElem] = {}
        for word, coeff in (terms or {}).items():
            if not isinstance(coeff, FieldElem):
                coeff = FieldElem.rational(coeff, table)
            elif coeff.table != table:
                raise BadArguments("coefficient prime table differs from series prime table")
            if word in collected:
                coeff = collected[word] + coeff
            collected[word] = coeff
        self._terms = self._sorted(collected)
        self.trunc = trunc
        self.table = table

    @staticmethod
    def _sorted(terms: Dict[GroupWord, FieldElem]) -> Dict[GroupWord, FieldElem]:
        return {word: terms[word] for word in sorted(terms) if not terms[word].is_zero()}

    @classmethod
    def _raw(cls, terms: Dict[GroupWord, FieldElem], trunc: Optional[int], table: PrimeTable) -> 'Series':
        series = cls.__new__(cls)
        series._terms = cls._sorted(terms)
        series.trunc = trunc
        series.table = table
        return series

    # -- constructors ----------------------------------------------------
    @classmethod
    def scalar(cls, value: Scalar, table: PrimeTable = DEFAULT_TABLE) -> 'Series':
        return cls({IDENTITY: value}, table=table)

    @classmethod
    def monomial(cls, word: GroupWord, coeff: Scalar = 1, table: PrimeTable = DEFAULT_TABLE) -> 'Series':
        return cls({word: coeff}, table=table)

    @classmethod
    def generator(cls, index: int, exponent: int = 1, table: PrimeTable = DEFAULT_TABLE) -> 'Series':
        return cls.monomial(GroupWord.generator(index, exponent), 1, table)

    @classmethod
    def sqrt(cls, index: int, table: PrimeTable = DEFAULT_TABLE) -> 'Series':
        return cls.scalar(FieldElem.sqrt(index, table), table)

    @classmethod
    def one(cls, table: PrimeTable = DEFAULT_TABLE) -> 'Series':
        return cls.scalar(1, table)

    @classmethod
    def zero(cls, table: PrimeTable = DEFAULT_TABLE) -> 'Series':
        return cls(table=table)

    # -- inspection ------------------------------------------------------
    @property
    def terms(self) -> Dict[GroupWord, FieldElem]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[GroupWord, FieldElem]]:
        return iter(self._terms.items())

    def support(self) -> List[GroupWord]:
        return list(self._terms)

    def coefficient(self, word: GroupWord) -> FieldElem:
        return self._terms.get(word, FieldElem.zero(self.table))

    def is_exact(self) -> bool:
        return self.trunc is None

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading(self) -> Tuple[GroupWord, FieldElem]:
        """按群序最小的支撑元素及其系数"""
        if not self._terms:
            raise ZeroInversion("0 has no leading term")
        word = next(iter(self._terms))
        return word, self._terms[word]

    @property
    def window(self) -> int:
        """支撑字与系数中出现的最大指标"""
        top = 0
        for word, coeff in self._terms.items():
            top = max(top, word.max_index, coeff.level)
        return top

    def exact(self) -> 'Series':
        """去掉截断标记"""
        return Series._raw(dict(self._terms), None, self.table)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations -------------------------------------------------
    def _coerce(self, other) -> 'Series':
        if isinstance(other, Series):
            if other.table != self.table:
                raise BadArguments("series use different prime tables")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return Series.scalar(other, self.table)
        return NotImplemented

    def __add__(self, other) -> 'Series':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = dict(self._terms)
        for word, coeff in other._terms.items():
            result[word] = result[word] + coeff if word in result else coeff
        return Series._raw(result, _merge_trunc(self.trunc, other.trunc), self.table)

    def __radd__(self, other) -> 'Series':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + self

    def __neg__(self) -> 'Series':
        return Series._raw({word: -coeff for word, coeff in self._terms.items()}, self.trunc, self.table)

    def __sub__(self, other) -> 'Series':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'Series':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> 'Series':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result: Dict[GroupWord, FieldElem] = {}
        for x, a_x in self._terms.items():
            parity = x.parity()
            for y, b_y in other._terms.items():
                # a_x·x · b_y·y = a_x·Φ_x(b_y)·xy
                coeff = a_x * b_y.apply_auto(parity)
                z = x * y
                result[z] = result[z] + coeff if z in result else coeff
        return Series._raw(result, _merge_trunc(self.trunc, other.trunc), self.table)

    def __rmul__(self, other) -> 'Series':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def inverse(self, depth: int) -> 'Series':
        """a = a₀x₀(1 + ε)，返回 (Σ_{k=0}^{depth} (−ε)^k)·(a₀x₀)⁻¹；单项式时精确"""
        if depth < 1:
            raise BadArguments("inversion depth must be positive")
        if not self._terms:
            raise ZeroInversion("cannot invert the zero series")
        x0, a0 = self.leading()
        lead_inverse = Series._raw({x0.inverse(): a0.inverse().apply_auto(x0.parity())}, None, self.table)
        epsilon = lead_inverse * self.exact() - 1
        if epsilon.is_zero():
            return Series._raw(dict(lead_inverse._terms), self.trunc, self.table)
        step = -epsilon
        total = Series.one(self.table)
        power = Series.one(self.table)
        for _ in range(depth):
            power = power * step
            total = total + power
        result = total * lead_inverse
        logger.debug("Neumann inverse: %d input terms, depth %d, %d output terms", len(self), depth, len(result))
        return Series._raw(dict(result._terms), _merge_trunc(self.trunc, depth), self.table)

    def __pow__(self, exponent: int) -> 'Series':
        if exponent < 0:
            if not self.is_monomial():
                raise NeedsDepth("negative powers of non-monomials need inv(expr, depth)")
            return self.inverse(1) ** (-exponent)
        result = Series._raw({IDENTITY: FieldElem.one(self.table)}, self.trunc, self.table)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- equality --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, FieldElem)):
            other = Series.scalar(other, self.table)
        if not isinstance(other, Series):
            return NotImplemented
        return sr_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.trunc, self.table, tuple(self._terms.items())))

    # -- text / records --------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return '0'
        pieces: List[str] = []
        for word, coeff in self._terms.items():
            coeff_text = coeff.to_text()
            if len(coeff) > 1:
                coeff_text = f'({coeff_text})'
            term = f'{coeff_text}*{word.to_text()}'
            if not pieces:
                pieces.append(term)
            elif term.startswith('-'):
                pieces.append(f' - {term[1:]}')
            else:
                pieces.append(f' + {term}')
        return ''.join(pieces)

    def to_record(self) -> Dict[str, Any]:
        return {
            'schema_version': Config.SCHEMA_VERSION,
            'kind': 'series',
            'primes': list(self.table.override),
            'trunc': self.trunc,
            'terms': [{'word': word.to_record(), 'coeff': coeff.to_record()} for word, coeff in self._terms.items()],
        }

    @classmethod
    def from_record(cls, record: Mapping[str, Any]) -> 'Series':
        if record.get('kind') != 'series':
            raise BadArguments(f"not a series record: {record.get('kind')!r}")
        table = PrimeTable(record.get('primes', ()))
        terms = {
            GroupWord.from_record(item['word']): FieldElem.from_record(item['coeff'], table)
            for item in record.get('terms', [])
        }
        return cls(terms, trunc=record.get('trunc'), table=table)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        suffix = f', trunc={self.trunc}' if self.trunc is not None else ''
        return f'Series({self.to_text()!r}{suffix})'


def sr_equal(a: Series, b: Series) -> bool:
    """截断值只与截断值比较，且要求深度标记一致"""
    if (a.trunc is None) != (b.trunc is None):
        raise MixedTruncation("cannot compare an exact series with a truncated one")
    return a.trunc == b.trunc and a.table == b.table and a._terms == b._terms


def sr_add(a: Series, b: Series) -> Series:
    return a + b


def sr_mul(a: Series, b: Series) -> Series:
    return a * b


def sr_inv(a: Series, depth: int) -> Series:
    return a.inverse(depth)


def sr_conjugate(a: Series, u: Series, depth: int) -> Series:
    return u * a * u.inverse(depth)


def sr_commutator(a: Series, b: Series, depth: int) -> Series:
    if a.is_zero() or b.is_zero():
        raise ZeroInversion("commutator needs nonzero operands")
    return a * b * a.inverse(depth) * b.inverse(depth)


def _require_exact(a: Series) -> None:
    if a.trunc is not None:
        raise TruncatedInput(f"operation needs an exact series, got depth-{a.trunc} truncation")


def sr_is_central(a: Series) -> bool:
    """支撑全在 H 内且系数全为有理数"""
    _require_exact(a)
    return all(word.in_squares() and coeff.is_rational() for word, coeff in a.items())


def sr_commutation_window_test(a: Series) -> bool:
    """检验 a 与 √p_i、x_i（i ≤ W(a)）是否交换；更大的指标自动交换"""
    _require_exact(a)
    for index in range(1, a.window + 1):
        for probe in (Series.sqrt(index, a.table), Series.generator(index, table=a.table)):
            if a * probe != probe * a:
                return False
    return True


def inversion_residual_floor(a: Series, depth: int) -> Optional[GroupWord]:
    """(min supp ε)^{depth+1}；单项式返回 None"""
    x0, _ = a.leading()
    rest = [word for word in a.support() if word != x0]
    if not rest:
        return None
    return (x0.inverse() * rest[0]) ** (depth + 1)


def inversion_residual(a: Series, depth: int) -> Series:
    """a·inv(a, depth) − 1（精确值）"""
    return (a.exact() * a.inverse(depth).exact()) - 1


def check_inversion_contract(a: Series, depth: int) -> bool:
    residual = inversion_residual(a, depth)
    floor = inversion_residual_floor(a, depth)
    if floor is None:
        return residual.is_zero()
    return all(not word < floor for word in residual.support())


# -- γ experiments -------------------------------------------------------

@dataclass(frozen=True)
class GammaSpec:
    """γ_N = x₁⁻¹ + ... + x_N⁻¹"""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise BadArguments("gamma truncation length must be positive")


@dataclass(frozen=True)
class GammaWitness:
    N: int
    degree: int
    coefficient: Fraction
    absent_below_degree: bool

    @property
    def expected(self) -> int:
        return factorial(self.degree)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': Config.SCHEMA_VERSION,
            'kind': 'gamma_witness',
            'N': self.N,
            'degree': self.degree,
            'coefficient': str(self.coefficient),
            'absent_below_degree': self.absent_below_degree,
        }


def gamma_series(spec: GammaSpec, table: PrimeTable = DEFAULT_TABLE) -> Series:
    return Series({GroupWord.generator(index, -1): 1 for index in range(1, spec.N + 1)}, table=table)


def gamma_tail_series(n: int, N: int, table: PrimeTable = DEFAULT_TABLE) -> Series:
    """γ_n 的截断：x_{n+1}⁻¹ + ... + x_N⁻¹"""
    if n < 0 or n > N:
        raise BadArguments(f"tail start {n} must lie in [0, {N}]")
    return Series({GroupWord.generator(index, -1): 1 for index in range(n + 1, N + 1)}, table=table)


def gamma_tail_check(n: int, N: int, table: PrimeTable = DEFAULT_TABLE) -> bool:
    tail = gamma_tail_series(n, N, table)
    head = gamma_series(GammaSpec(n), table) if n else Series.zero(table)
    if head + tail != gamma_series(GammaSpec(N), table):
        return False
    for index in range(1, n + 1):
        for probe in (Series.sqrt(index, table), Series.generator(index, table=table)):
            if tail * probe != probe * tail:
                return False
    return True


def _check_degree(N: int, n: int) -> None:
    if N < 1:
        raise BadArguments("N must be positive")
    if n < 0 or n > N:
        raise BadArguments(f"degree {n} must lie in [0, N={N}]")


def gamma_witness(N: int, n: int, table: PrimeTable = DEFAULT_TABLE) -> GammaWitness:
    _check_degree(N, n)
    if n < 1:
        raise BadArguments("degree must be positive")
    target = GroupWord({index: -1 for index in range(1, n + 1)})
    gamma = gamma_series(GammaSpec(N), table)
    power = Series.one(table)
    absent = True
    for k in range(1, n + 1):
        power = power * gamma
        if k < n and not power.coefficient(target).is_zero():
            absent = False
    coeff = power.coefficient(target)
    if not coeff.is_rational():
        raise InvariantViolation(f"coefficient of {target} is not rational: {coeff}")
    logger.debug("gamma witness N=%d n=%d: %s terms in gamma^n", N, n, len(power))
    return GammaWitness(N=N, degree=n, coefficient=coeff.rational_part(), absent_below_degree=absent)


def gamma_coefficient_witness(N: int, n: int, table: PrimeTable = DEFAULT_TABLE) -> Fraction:
    """γ_N^n 中 X = x₁⁻¹⋯x_n⁻¹ 的系数；同时要求 X 不出现在更低次幂中"""
    witness = gamma_witness(N, n, table)
    if not witness.absent_below_degree:
        raise InvariantViolation(f"X appears below degree {n} for N={N}")
    return witness.coefficient


def gamma_independence_probe(N: int, n: int, table: PrimeTable = DEFAULT_TABLE) -> int:
    """1, γ_N, ..., γ_N^n 的系数向量矩阵之秩"""
    _check_degree(N, n)
    gamma = gamma_series(GammaSpec(N), table)
    powers = [Series.one(table)]
    for _ in range(n):
        powers.append(powers[-1] * gamma)
    columns = sorted({word for power in powers for word in power.support()})
    rows: List[List[Fraction]] = []
    for power in powers:
        row = []
        for word in columns:
            coeff = power.coefficient(word)
            if not coeff.is_rational():
                raise InvariantViolation(f"gamma power has irrational coefficient at {word}")
            row.append(coeff.rational_part())
        rows.append(row)
    return linalg.rank(rows, len(columns))
