"""
自由阿贝尔群 G = ⊕Z（乘法记号）、字典序、平方子群 H 与奇偶性数据
"""
from enum import Enum
from functools import total_ordering
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from errors import BadArguments


class Ordering(str, Enum):
    """比较结果"""

    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@total_ordering
class GroupWord:
    """∏ x_i^{n_i}，只保存非零指数，按指标递增排列"""

    __slots__ = ('_exponents',)

    def __init__(self, exponents: Optional[Mapping[int, int]] = None):
        cleaned: Dict[int, int] = {}
        for index, exponent in (exponents or {}).items():
            index, exponent = int(index), int(exponent)
            if index < 1:
                raise BadArguments(f"generator index must be positive, got {index}")
            if exponent:
                cleaned[index] = exponent
        self._exponents: Tuple[Tuple[int, int], ...] = tuple(sorted(cleaned.items()))

    @classmethod
    def identity(cls) -> 'GroupWord':
        return cls()

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> 'GroupWord':
        return cls({index: exponent})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> 'GroupWord':
        exponents: Dict[int, int] = {}
        for index, exponent in pairs:
            exponents[index] = exponents.get(index, 0) + exponent
        return cls(exponents)

    # -- inspection ------------------------------------------------------
    @property
    def exponents(self) -> Dict[int, int]:
        return dict(self._exponents)

    @property
    def max_index(self) -> int:
        return self._exponents[-1][0] if self._exponents else 0

    def is_identity(self) -> bool:
        return not self._exponents

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._exponents)

    # -- group law -------------------------------------------------------
    def __mul__(self, other: 'GroupWord') -> 'GroupWord':
        if not isinstance(other, GroupWord):
            return NotImplemented
        result = dict(self._exponents)
        for index, exponent in other._exponents:
            result[index] = result.get(index, 0) + exponent
        return GroupWord(result)

    def inverse(self) -> 'GroupWord':
        return GroupWord({index: -exponent for index, exponent in self._exponents})

    def __pow__(self, power: int) -> 'GroupWord':
        return GroupWord({index: exponent * power for index, exponent in self._exponents})

    # -- order -----------------------------------------------------------
    def compare(self, other: 'GroupWord') -> Ordering:
        """按指标 1, 2, 3, ... 逐个比较指数，缺失的指数视为 0"""
        left = dict(self._exponents)
        right = dict(other._exponents)
        for index in sorted(set(left) | set(right)):
            a, b = left.get(index, 0), right.get(index, 0)
            if a != b:
                return Ordering.LT if a < b else Ordering.GT
        return Ordering.EQ

    def __lt__(self, other: 'GroupWord') -> bool:
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.compare(other) is Ordering.LT

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self._exponents == other._exponents

    def __hash__(self) -> int:
        return hash(self._exponents)

    # -- H and Φ ---------------------------------------------------------
    def in_squares(self) -> bool:
        return all(exponent % 2 == 0 for _, exponent in self._exponents)

    def parity(self) -> FrozenSet[int]:
        return frozenset(index for index, exponent in self._exponents if exponent % 2)

    # -- text ------------------------------------------------------------
    def to_text(self) -> str:
        if not self._exponents:
            return 'e'
        factors: List[str] = []
        for index, exponent in self._exponents:
            factors.append(f'x{index}' if exponent == 1 else f'x{index}^{exponent}')
        return '*'.join(factors)

    def to_record(self) -> List[List[int]]:
        return [[index, exponent] for index, exponent in self._exponents]

    @classmethod
    def from_record(cls, record: Iterable[Iterable[int]]) -> 'GroupWord':
        return cls.from_pairs((int(index), int(exponent)) for index, exponent in record)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f'GroupWord({self.to_text()!r})'


IDENTITY = GroupWord.identity()


def gw_mul(x: GroupWord, y: GroupWord) -> GroupWord:
    return x * y


def gw_inv(x: GroupWord) -> GroupWord:
    return x.inverse()


def gw_compare(x: GroupWord, y: GroupWord) -> Ordering:
    return x.compare(y)


def gw_in_H(x: GroupWord) -> bool:
    return x.in_squares()


def gw_parity(x: GroupWord) -> FrozenSet[int]:
    return x.parity()
