"""
有限维特化代数 A_n：n 个四元数型代数 (a_i, b_i / Q) 的张量积
结构常数、正则表示、中心化子维数、正则范数与挠元检测
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import linalg
from config import Config
from errors import BadArguments, DimensionMismatch, SingularElement
from field_tower import DEFAULT_TABLE, PrimeTable
from twisted_series import Series

logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]


def _popcount(value: int) -> int:
    return bin(value).count('1')


@dataclass(frozen=True)
class AlgebraParams:
    """u_i² = a_i（对应 (√p_i)² = p_i），v_i² = b_i（对应中心元 x_i²）"""

    n: int
    a_list: Tuple[Fraction, ...] = ()
    b_list: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise BadArguments("number of quaternion factors must be non-negative")
        a_list = tuple(Fraction(value) for value in self.a_list)
        b_list = tuple(Fraction(value) for value in self.b_list)
        if len(a_list) != self.n or len(b_list) != self.n:
            raise BadArguments(f"expected {self.n} values for a and b, got {len(a_list)} and {len(b_list)}")
        if any(value == 0 for value in a_list + b_list):
            raise BadArguments("a_i and b_i must be nonzero")
        object.__setattr__(self, 'a_list', a_list)
        object.__setattr__(self, 'b_list', b_list)

    @classmethod
    def default(cls, n: int, table: PrimeTable = DEFAULT_TABLE) -> 'AlgebraParams':
        """a_i = p_i，b_i = p_{n+i}（与 a_i 不相交的素数）"""
        return cls(n, tuple(table.prime(i) for i in range(1, n + 1)),
                   tuple(table.prime(n + i) for i in range(1, n + 1)))

    @property
    def dim(self) -> int:
        return 1 << (2 * self.n)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': Config.SCHEMA_VERSION,
            'kind': 'algebra_params',
            'n': self.n,
            'a': [str(value) for value in self.a_list],
            'b': [str(value) for value in self.b_list],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'AlgebraParams':
        return cls(int(data['n']), tuple(Fraction(str(v)) for v in data.get('a', [])),
                   tuple(Fraction(str(v)) for v in data.get('b', [])))


@dataclass(frozen=True)
class BasisIndex:
    """u_1^{ε_1}⋯u_n^{ε_n}·v_1^{μ_1}⋯v_n^{μ_n}；位置编码为 ε 位在低位、μ 位在高位，按 i 小端"""

    eps: Tuple[int, ...]
    mu: Tuple[int, ...]

    def __post_init__(self):
        if len(self.eps) != len(self.mu):
            raise DimensionMismatch("eps and mu must have the same length")
        if any(bit not in (0, 1) for bit in self.eps + self.mu):
            raise BadArguments("basis exponents must be 0 or 1")

    @property
    def position(self) -> int:
        n = len(self.eps)
        value = 0
        for i, bit in enumerate(self.eps):
            value |= bit << i
        for i, bit in enumerate(self.mu):
            value |= bit << (n + i)
        return value

    @classmethod
    def from_position(cls, n: int, position: int) -> 'BasisIndex':
        return cls(tuple((position >> i) & 1 for i in range(n)),
                   tuple((position >> (n + i)) & 1 for i in range(n)))

    def label(self) -> str:
        factors = [f'u{i + 1}' for i, bit in enumerate(self.eps) if bit]
        factors += [f'v{i + 1}' for i, bit in enumerate(self.mu) if bit]
        return '*'.join(factors) or '1'


@lru_cache(maxsize=32)
def structure_constants(params: AlgebraParams) -> Tuple[Tuple[Tuple[int, Fraction], ...], ...]:
    """table[k1][k2] = (k3, c)，即 e_{k1}·e_{k2} = c·e_{k3}"""
    n = params.n
    low = (1 << n) - 1
    rows = []
    for k1 in range(params.dim):
        e1, m1 = k1 & low, k1 >> n
        row = []
        for k2 in range(params.dim):
            e2, m2 = k2 & low, k2 >> n
            # v_i 越过 u_i 时变号
            coeff = Fraction(-1 if _popcount(m1 & e2) % 2 else 1)
            for i in range(n):
                if (e1 & e2) >> i & 1:
                    coeff *= params.a_list[i]
                if (m1 & m2) >> i & 1:
                    coeff *= params.b_list[i]
            row.append(((e1 ^ e2) | ((m1 ^ m2) << n), coeff))
        rows.append(tuple(row))
    logger.debug("structure constants built for n=%d (dim %d)", n, params.dim)
    return tuple(rows)


@dataclass(frozen=True)
class AlgebraElem:
    """A_n 中的元素：典范基下的有理坐标向量"""

    params: AlgebraParams
    coords: Tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        coords = tuple(Fraction(value) for value in self.coords)
        if len(coords) != self.params.dim:
            raise DimensionMismatch(f"expected {self.params.dim} coordinates, got {len(coords)}")
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def zero(cls, params: AlgebraParams) -> 'AlgebraElem':
        return cls(params, (0,) * params.dim)

    @classmethod
    def scalar(cls, params: AlgebraParams, value) -> 'AlgebraElem':
        coords = [Fraction(0)] * params.dim
        coords[0] = Fraction(value)
        return cls(params, tuple(coords))

    @classmethod
    def one(cls, params: AlgebraParams) -> 'AlgebraElem':
        return cls.scalar(params, 1)

    @classmethod
    def basis(cls, params: AlgebraParams, position: int, value=1) -> 'AlgebraElem':
        coords = [Fraction(0)] * params.dim
        coords[position] = Fraction(value)
        return cls(params, tuple(coords))

    @classmethod
    def u(cls, params: AlgebraParams, index: int) -> 'AlgebraElem':
        return cls.basis(params, 1 << (index - 1))

    @classmethod
    def v(cls, params: AlgebraParams, index: int) -> 'AlgebraElem':
        return cls.basis(params, 1 << (params.n + index - 1))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: 'AlgebraElem') -> None:
        if other.params != self.params:
            raise DimensionMismatch("algebra elements come from different parameter sets")

    def __add__(self, other: 'AlgebraElem') -> 'AlgebraElem':
        self._check(other)
        return AlgebraElem(self.params, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'AlgebraElem':
        return AlgebraElem(self.params, tuple(-a for a in self.coords))

    def __sub__(self, other: 'AlgebraElem') -> 'AlgebraElem':
        return self + (-other)

    def __mul__(self, other) -> 'AlgebraElem':
        if isinstance(other, (int, Fraction)):
            return AlgebraElem(self.params, tuple(a * other for a in self.coords))
        return alg_mul(self.params, self, other)

    def __rmul__(self, other) -> 'AlgebraElem':
        if isinstance(other, (int, Fraction)):
            return AlgebraElem(self.params, tuple(a * other for a in self.coords))
        return NotImplemented

    def __pow__(self, exponent: int) -> 'AlgebraElem':
        if exponent < 0:
            return alg_inv(self.params, self) ** (-exponent)
        result = AlgebraElem.one(self.params)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def to_text(self) -> str:
        pieces = []
        for position, value in enumerate(self.coords):
            if value:
                label = BasisIndex.from_position(self.params.n, position).label()
                pieces.append(f'{value}' if label == '1' else f'{value}*{label}')
        return ' + '.join(pieces) or '0'

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': Config.SCHEMA_VERSION,
            'kind': 'algebra_elem',
            'params': self.params.to_dict(),
            'coords': [str(value) for value in self.coords],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'AlgebraElem':
        params = AlgebraParams.from_dict(data['params'])
        return cls(params, tuple(Fraction(str(value)) for value in data['coords']))


def alg_mul(p: AlgebraParams, x: AlgebraElem, y: AlgebraElem) -> AlgebraElem:
    if x.params != p or y.params != p:
        raise DimensionMismatch("operands do not belong to the given algebra")
    table = structure_constants(p)
    coords = [Fraction(0)] * p.dim
    for k1, a in enumerate(x.coords):
        if not a:
            continue
        row = table[k1]
        for k2, b in enumerate(y.coords):
            if not b:
                continue
            k3, c = row[k2]
            coords[k3] += a * b * c
    return AlgebraElem(p, tuple(coords))


def alg_regular_matrix(p: AlgebraParams, x: AlgebraElem) -> Matrix:
    """左乘 x 的矩阵，第 k 列为 x·e_k 的坐标"""
    table = structure_constants(p)
    matrix = [[Fraction(0)] * p.dim for _ in range(p.dim)]
    for j, value in enumerate(x.coords):
        if not value:
            continue
        for k in range(p.dim):
            k3, c = table[j][k]
            matrix[k3][k] += value * c
    return matrix


def alg_right_matrix(p: AlgebraParams, x: AlgebraElem) -> Matrix:
    """右乘 x 的矩阵，第 k 列为 e_k·x 的坐标"""
    table = structure_constants(p)
    matrix = [[Fraction(0)] * p.dim for _ in range(p.dim)]
    for j, value in enumerate(x.coords):
        if not value:
            continue
        for k in range(p.dim):
            k3, c = table[k][j]
            matrix[k3][k] += value * c
    return matrix


def alg_norm(p: AlgebraParams, x: AlgebraElem) -> Fraction:
    """正则范数：左正则表示的行列式"""
    return linalg.determinant(alg_regular_matrix(p, x))


def alg_inv(p: AlgebraParams, x: AlgebraElem) -> AlgebraElem:
    matrix = alg_regular_matrix(p, x)
    if linalg.determinant(matrix) == 0:
        raise SingularElement(f"element is zero or a zero divisor: {x.to_text()}")
    rhs = [Fraction(0)] * p.dim
    rhs[0] = Fraction(1)
    return AlgebraElem(p, tuple(linalg.solve(matrix, rhs)))


def alg_commutator(p: AlgebraParams, g: AlgebraElem, h: AlgebraElem) -> AlgebraElem:
    return g * h * alg_inv(p, g) * alg_inv(p, h)


def generators(p: AlgebraParams) -> List[AlgebraElem]:
    return [AlgebraElem.u(p, i) for i in range(1, p.n + 1)] + [AlgebraElem.v(p, i) for i in range(1, p.n + 1)]


def alg_centralizer_dimension(p: AlgebraParams) -> int:
    """{x : x·g = g·x，g 取遍 2n 个生成元} 的维数 = 叠加方程组 [L_g − R_g] 的零化度"""
    rows: Matrix = []
    for gen in generators(p):
        left = alg_regular_matrix(p, gen)
        right = alg_right_matrix(p, gen)
        rows.extend([l - r for l, r in zip(left_row, right_row)] for left_row, right_row in zip(left, right))
    dimension = linalg.nullity(rows, p.dim)
    logger.debug("centralizer of A_%d with a=%s b=%s: dimension %d", p.n, p.a_list, p.b_list, dimension)
    return dimension


def alg_basis_rank(p: AlgebraParams) -> int:
    """基单项式在正则表示下作用于 1 所得向量的秩"""
    rows = [[row[0] for row in alg_regular_matrix(p, AlgebraElem.basis(p, k))] for k in range(p.dim)]
    return linalg.rank(rows, p.dim)


def alg_torsion_order(p: AlgebraParams, x: AlgebraElem, bound: int) -> Optional[int]:
    """最小的 k ≤ bound 使 x^k = 1"""
    one = AlgebraElem.one(p)
    power = one
    for k in range(1, bound + 1):
        power = power * x
        if power == one:
            return k
    return None


def specialize_series(p: AlgebraParams, series: Series, table: Optional[PrimeTable] = None) -> AlgebraElem:
    """中心特化 x_i² ↦ b_i、(√p_i)² ↦ a_i；要求 a_i = p_i 且级数只涉及指标 ≤ n"""
    table = table or series.table
    if any(p.a_list[i - 1] != table.prime(i) for i in range(1, p.n + 1)):
        raise BadArguments("specialization needs a_i = p_i")
    if series.trunc is not None:
        raise BadArguments("only exact series can be specialized")
    if series.window > p.n:
        raise BadArguments(f"series uses index {series.window} beyond n={p.n}")
    coords = [Fraction(0)] * p.dim
    for word, coeff in series.items():
        scale = Fraction(1)
        mu = 0
        for index, exponent in word:
            half, bit = divmod(exponent, 2)
            scale *= p.b_list[index - 1] ** half
            mu |= bit << (index - 1)
        for mask, value in coeff.items():
            eps = 0
            for index in mask:
                eps |= 1 << (index - 1)
            coords[eps | (mu << p.n)] += value * scale
    return AlgebraElem(p, tuple(coords))
