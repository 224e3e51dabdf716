"""
多二次域 K = Q(√p1, √p2, ...) 的精确运算
以及互相交换的对合自同构 f_i
"""
import logging
from fractions import Fraction
from functools import lru_cache
from threading import RLock
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from errors import BadArguments, ConfigError, ZeroInversion

logger = logging.getLogger(__name__)

Mask = FrozenSet[int]
Parity = FrozenSet[int]
RationalLike = Union[int, Fraction]

EMPTY_MASK: Mask = frozenset()


# 覆盖表之后的素数按需逐个追加，每个覆盖表一份
_EXTENSIONS: Dict[Tuple[int, ...], List[int]] = {}
_EXTENSIONS_LOCK = RLock()


@lru_cache(maxsize=None)
def _nth_prime(index: int) -> int:
    return int(sympy.prime(index))


def _extended_prime(override: Tuple[int, ...], index: int) -> int:
    if index <= len(override):
        return override[index - 1]
    if not override:
        return _nth_prime(index)
    with _EXTENSIONS_LOCK:
        primes = _EXTENSIONS.setdefault(override, list(override))
        while len(primes) < index:
            primes.append(int(sympy.nextprime(primes[-1])))
        return primes[index - 1]


class PrimeTable:
    """素数序列 i -> p_i，严格递增"""

    __slots__ = ('_override',)

    def __init__(self, primes: Sequence[int] = ()):
        override = tuple(int(p) for p in primes)
        for position, value in enumerate(override):
            if not sympy.isprime(value):
                raise ConfigError(f"prime table entry {value} is not prime")
            if position and value <= override[position - 1]:
                raise ConfigError("prime table must be strictly increasing")
        self._override = override

    @property
    def override(self) -> Tuple[int, ...]:
        return self._override

    def prime(self, index: int) -> int:
        if index < 1:
            raise BadArguments(f"radical index must be positive, got {index}")
        return _extended_prime(self._override, index)

    def primes(self, count: int) -> List[int]:
        return [self.prime(i) for i in range(1, count + 1)]

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeTable) and other._override == self._override

    def __hash__(self) -> int:
        return hash(('PrimeTable', self._override))

    def __repr__(self) -> str:
        if not self._override:
            return 'PrimeTable(default)'
        return f'PrimeTable({list(self._override)})'


DEFAULT_TABLE = PrimeTable()


def mask_key(mask: Mask) -> Tuple[int, ...]:
    return tuple(sorted(mask))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class FieldElem:
    """K 中的元素：根式单项式（指标集合）到有理系数的有限支撑映射"""

    __slots__ = ('_terms', 'table')

    def __init__(self, terms: Optional[Mapping[Iterable[int], RationalLike]] = None,
                 table: PrimeTable = DEFAULT_TABLE):
        normalized: Dict[Mask, Fraction] = {}
        for raw_mask, raw_coeff in (terms or {}).items():
            mask = frozenset(raw_mask)
            if any(index < 1 for index in mask):
                raise BadArguments(f"radical indices must be positive: {sorted(mask)}")
            coeff = normalized.get(mask, Fraction(0)) + Fraction(raw_coeff)
            normalized[mask] = coeff
        self._terms: Dict[Mask, Fraction] = {
            mask: normalized[mask]
            for mask in sorted(normalized, key=mask_key)
            if normalized[mask] != 0
        }
        self.table = table

    # -- constructors ----------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Mask, Fraction], table: PrimeTable) -> 'FieldElem':
        elem = cls.__new__(cls)
        elem._terms = {mask: terms[mask] for mask in sorted(terms, key=mask_key) if terms[mask] != 0}
        elem.table = table
        return elem

    @classmethod
    def rational(cls, value: RationalLike, table: PrimeTable = DEFAULT_TABLE) -> 'FieldElem':
        return cls({EMPTY_MASK: value}, table)

    @classmethod
    def sqrt(cls, index: int, table: PrimeTable = DEFAULT_TABLE) -> 'FieldElem':
        return cls({frozenset({index}): 1}, table)

    @classmethod
    def zero(cls, table: PrimeTable = DEFAULT_TABLE) -> 'FieldElem':
        return cls._raw({}, table)

    @classmethod
    def one(cls, table: PrimeTable = DEFAULT_TABLE) -> 'FieldElem':
        return cls._raw({EMPTY_MASK: Fraction(1)}, table)

    # -- inspection ------------------------------------------------------
    @property
    def terms(self) -> Dict[Mask, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Mask, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, mask: Iterable[int]) -> Fraction:
        return self._terms.get(frozenset(mask), Fraction(0))

    @property
    def level(self) -> int:
        """所有单项式中出现的最大指标；有理数为 0"""
        return max((max(mask) for mask in self._terms if mask), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(not mask for mask in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(EMPTY_MASK, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> 'FieldElem':
        if isinstance(other, FieldElem):
            if other.table != self.table:
                raise BadArguments(f"prime tables differ: {self.table!r} vs {other.table!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem.rational(other, self.table)
        return NotImplemented

    def __add__(self, other) -> 'FieldElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = dict(self._terms)
        for mask, coeff in other._terms.items():
            result[mask] = result.get(mask, Fraction(0)) + coeff
        return FieldElem._raw(result, self.table)

    __radd__ = __add__

    def __neg__(self) -> 'FieldElem':
        return FieldElem._raw({mask: -coeff for mask, coeff in self._terms.items()}, self.table)

    def __sub__(self, other) -> 'FieldElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'FieldElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> 'FieldElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result: Dict[Mask, Fraction] = {}
        for mask_a, coeff_a in self._terms.items():
            for mask_b, coeff_b in other._terms.items():
                coeff = coeff_a * coeff_b
                # (√p_i)^2 = p_i
                for index in mask_a & mask_b:
                    coeff *= self.table.prime(index)
                mask = mask_a ^ mask_b
                result[mask] = result.get(mask, Fraction(0)) + coeff
        return FieldElem._raw(result, self.table)

    __rmul__ = __mul__

    def inverse(self) -> 'FieldElem':
        """按最大指标做共轭下降：a = u + v√p_m，a⁻¹ = (u − v√p_m)·(u² − v²p_m)⁻¹"""
        if not self._terms:
            raise ZeroInversion("cannot invert 0 in K")
        top = self.level
        if top == 0:
            return FieldElem.rational(1 / self.rational_part(), self.table)
        lower: Dict[Mask, Fraction] = {}
        upper: Dict[Mask, Fraction] = {}
        for mask, coeff in self._terms.items():
            if top in mask:
                upper[mask - {top}] = coeff
            else:
                lower[mask] = coeff
        u = FieldElem._raw(lower, self.table)
        v = FieldElem._raw(upper, self.table)
        conjugate = u - v * FieldElem.sqrt(top, self.table)
        norm = u * u - v * v * self.table.prime(top)
        return conjugate * norm.inverse()

    def __truediv__(self, other) -> 'FieldElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, exponent: int) -> 'FieldElem':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElem.one(self.table)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def apply_auto(self, parity: Iterable[int]) -> 'FieldElem':
        """应用 ∏_{i∈parity} f_i：每个公共指标使符号翻转一次"""
        parity = frozenset(parity)
        if not parity:
            return self
        return FieldElem._raw(
            {mask: -coeff if len(mask & parity) % 2 else coeff for mask, coeff in self._terms.items()},
            self.table,
        )

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FieldElem.rational(other, self.table)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.table == other.table and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.table, tuple((mask_key(m), c) for m, c in self._terms.items())))

    # -- text / records --------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return '0'
        pieces: List[str] = []
        for mask, coeff in self._terms.items():
            body = format_rational(abs(coeff))
            if mask:
                body += ''.join(f'*s{index}' for index in mask_key(mask))
            if not pieces:
                pieces.append(f'-{body}' if coeff < 0 else body)
            else:
                pieces.append(f' - {body}' if coeff < 0 else f' + {body}')
        return ''.join(pieces)

    def to_record(self) -> List[Dict[str, object]]:
        return [{'mask': list(mask_key(mask)), 'value': format_rational(coeff)} for mask, coeff in self._terms.items()]

    @classmethod
    def from_record(cls, record: Sequence[Mapping[str, object]], table: PrimeTable = DEFAULT_TABLE) -> 'FieldElem':
        return cls({tuple(item['mask']): Fraction(str(item['value'])) for item in record}, table)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f'FieldElem({self.to_text()!r})'


def fe_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def fe_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def fe_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def fe_apply_auto(a: FieldElem, parity: Iterable[int]) -> FieldElem:
    return a.apply_auto(parity)


def fe_is_rational(a: FieldElem) -> bool:
    return a.is_rational()


def fixed_by_all(a: FieldElem, level: int) -> bool:
    """a 是否被 f_1, ..., f_level 全部固定"""
    return all(a.apply_auto({index}) == a for index in range(1, level + 1))
