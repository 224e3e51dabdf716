"""
有理四元数代数 (a, b / Q) 中的恒等式验证：
根式指数、共轭幂恒等式与分支结论、指数乘法论证、交换子的根式探测
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from config import Config
from errors import BadArguments, InvariantViolation, ZeroInversion
from finite_algebra import AlgebraElem, AlgebraParams

logger = logging.getLogger(__name__)

DEFAULT_PARAMS: Tuple[Fraction, Fraction] = (Fraction(-1), Fraction(-1))


@dataclass(frozen=True)
class QuatElem:
    """x0 + x1·u + x2·v + x3·uv，u² = a，v² = b，uv = −vu"""

    coords: Tuple[Fraction, Fraction, Fraction, Fraction]
    params: Tuple[Fraction, Fraction] = field(default=DEFAULT_PARAMS)

    def __post_init__(self):
        coords = tuple(Fraction(value) for value in self.coords)
        if len(coords) != 4:
            raise BadArguments("a quaternion has four coordinates")
        a, b = (Fraction(value) for value in self.params)
        if a == 0 or b == 0:
            raise BadArguments("quaternion parameters must be nonzero")
        object.__setattr__(self, 'coords', coords)
        object.__setattr__(self, 'params', (a, b))

    @classmethod
    def scalar(cls, value, params=DEFAULT_PARAMS) -> 'QuatElem':
        return cls((value, 0, 0, 0), params)

    @classmethod
    def u(cls, params=DEFAULT_PARAMS) -> 'QuatElem':
        return cls((0, 1, 0, 0), params)

    @classmethod
    def v(cls, params=DEFAULT_PARAMS) -> 'QuatElem':
        return cls((0, 0, 1, 0), params)

    @classmethod
    def uv(cls, params=DEFAULT_PARAMS) -> 'QuatElem':
        return cls((0, 0, 0, 1), params)

    def _coerce(self, other) -> 'QuatElem':
        if isinstance(other, QuatElem):
            if other.params != self.params:
                raise BadArguments("quaternions from different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return QuatElem.scalar(other, self.params)
        return NotImplemented

    def __add__(self, other) -> 'QuatElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuatElem(tuple(x + y for x, y in zip(self.coords, other.coords)), self.params)

    __radd__ = __add__

    def __neg__(self) -> 'QuatElem':
        return QuatElem(tuple(-x for x in self.coords), self.params)

    def __sub__(self, other) -> 'QuatElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'QuatElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> 'QuatElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.params
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = other.coords
        return QuatElem((
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ), self.params)

    def __rmul__(self, other) -> 'QuatElem':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def conjugate(self) -> 'QuatElem':
        x0, x1, x2, x3 = self.coords
        return QuatElem((x0, -x1, -x2, -x3), self.params)

    def reduced_norm(self) -> Fraction:
        a, b = self.params
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def is_invertible(self) -> bool:
        return self.reduced_norm() != 0

    def inverse(self) -> 'QuatElem':
        norm = self.reduced_norm()
        if norm == 0:
            raise ZeroInversion(f"quaternion {self.to_text()} is not invertible")
        return QuatElem(tuple(x / norm for x in self.conjugate().coords), self.params)

    def __pow__(self, exponent: int) -> 'QuatElem':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuatElem.scalar(1, self.params)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_central(self) -> bool:
        return not any(self.coords[1:])

    def commutes_with(self, other: 'QuatElem') -> bool:
        return self * other == other * self

    def to_algebra_elem(self) -> AlgebraElem:
        """同一元素在 A_1 中的坐标（基顺序 1, u, v, uv 一致）"""
        a, b = self.params
        return AlgebraElem(AlgebraParams(1, (a,), (b,)), self.coords)

    def to_text(self) -> str:
        labels = ('', 'u', 'v', 'uv')
        pieces = [f'{value}' if not label else f'{value}*{label}'
                  for value, label in zip(self.coords, labels) if value]
        return ' + '.join(pieces) or '0'

    def __str__(self) -> str:
        return self.to_text()


class SubringSpec(str, Enum):
    """四元数代数中的真除子环"""

    CENTER = "center"
    FIELD_U = "Q(u)"
    FIELD_V = "Q(v)"

    def contains(self, x: QuatElem) -> bool:
        _, x1, x2, x3 = x.coords
        if self is SubringSpec.CENTER:
            return x1 == 0 and x2 == 0 and x3 == 0
        if self is SubringSpec.FIELD_U:
            return x2 == 0 and x3 == 0
        return x1 == 0 and x3 == 0


class ConclusionBranch(str, Enum):
    B_SOLVABLE = "b_solvable"
    COMMUTATION = "commutation"


def quat_reduced_norm(x: QuatElem) -> Fraction:
    return x.reduced_norm()


def quat_radical_exponent(x: QuatElem, K: SubringSpec, bound: int) -> Optional[int]:
    """最小的 1 ≤ k ≤ bound 使 x^k ∈ K"""
    power = QuatElem.scalar(1, x.params)
    for k in range(1, bound + 1):
        power = power * x
        if K.contains(power):
            return k
    return None


def _conjugated_powers(a: QuatElem, b: QuatElem, m: int) -> Tuple[QuatElem, QuatElem]:
    if m < 1:
        raise BadArguments("exponent m must be positive")
    a_plus_b = a + b
    b_plus_one = b + 1
    if a_plus_b.is_zero() or not a_plus_b.is_invertible():
        raise BadArguments("a + b must be nonzero and invertible")
    if not b_plus_one.is_invertible():
        raise BadArguments("b + 1 must be invertible")
    x = a_plus_b * a * a_plus_b.inverse()
    y = b_plus_one * a * b_plus_one.inverse()
    x_m, y_m = x ** m, y ** m
    a_m = a ** m
    if x_m != a_plus_b * a_m * a_plus_b.inverse() or y_m != b_plus_one * a_m * b_plus_one.inverse():
        raise InvariantViolation("powers of conjugates disagree with conjugated powers")
    return x_m, y_m


def thm35_identity_check(a: QuatElem, b: QuatElem, m: int) -> bool:
    """(x^m − y^m)·b = a^m(a − 1) + y^m − x^m·a"""
    x_m, y_m = _conjugated_powers(a, b, m)
    lhs = (x_m - y_m) * b
    rhs = (a ** m) * (a - 1) + y_m - x_m * a
    return lhs == rhs


def thm35_conclusion_probe(a: QuatElem, b: QuatElem, m: int) -> ConclusionBranch:
    x_m, y_m = _conjugated_powers(a, b, m)
    a_m = a ** m
    difference = x_m - y_m
    if not difference.is_zero():
        if not difference.is_invertible():
            raise BadArguments("x^m − y^m is a nonzero zero divisor; the algebra is split")
        solved = difference.inverse() * (a_m * (a - 1) + y_m - x_m * a)
        if solved != b:
            raise InvariantViolation(f"solving for b gave {solved.to_text()} instead of {b.to_text()}")
        return ConclusionBranch.B_SOLVABLE
    if a == QuatElem.scalar(1, a.params):
        raise BadArguments("the commutation branch needs a ≠ 1")
    if a_m != y_m:
        raise InvariantViolation("x^m = y^m but a^m ≠ y^m")
    if not a_m.commutes_with(b):
        raise InvariantViolation("x^m = y^m but a^m does not commute with b")
    return ConclusionBranch.COMMUTATION


def lemma34_exponent_check(a: QuatElem, x: QuatElem, y: QuatElem, r: int, s: int) -> bool:
    """由 a^r x = x a^r、a^s y = y a^s 推出 a^{rs} 与 x、y 交换"""
    if r < 1 or s < 1:
        raise BadArguments("exponents must be positive")
    if not x.is_invertible() or not y.is_invertible():
        raise BadArguments("x and y must be invertible")
    if not (a ** r).commutes_with(x):
        raise BadArguments(f"a^{r} does not commute with x")
    if not (a ** s).commutes_with(y):
        raise BadArguments(f"a^{s} does not commute with y")
    a_rs = a ** (r * s)
    return a_rs == x * a_rs * x.inverse() and a_rs == y * a_rs * y.inverse()


def subcase12_check(a: QuatElem, b: QuatElem, x: QuatElem, r: int, s: int) -> bool:
    """由 a^r(xb) = (xb)a^r、a^s x = x a^s 推出 a^{rs} b = b a^{rs}"""
    if r < 1 or s < 1:
        raise BadArguments("exponents must be positive")
    if not x.is_invertible() or not b.is_invertible():
        raise BadArguments("x and b must be invertible")
    xb = x * b
    if not (a ** r).commutes_with(xb):
        raise BadArguments(f"a^{r} does not commute with xb")
    if not (a ** s).commutes_with(x):
        raise BadArguments(f"a^{s} does not commute with x")
    a_rs = a ** (r * s)
    if a_rs != xb.inverse() * a_rs * xb:
        return False
    return a_rs * b == b * a_rs


@dataclass(frozen=True)
class CommutatorProbe:
    commutator: QuatElem
    radical_exponent: Optional[int]
    central_value: Optional[Fraction]
    torsion_order: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': Config.SCHEMA_VERSION,
            'kind': 'commutator_probe',
            'commutator': [str(value) for value in self.commutator.coords],
            'radical_exponent': self.radical_exponent,
            'central_value': None if self.central_value is None else str(self.central_value),
            'torsion_order': self.torsion_order,
        }


def quat_commutator(g: QuatElem, h: QuatElem) -> QuatElem:
    return g * h * g.inverse() * h.inverse()


def commutator_radical_probe(g: QuatElem, h: QuatElem, bound: int) -> CommutatorProbe:
    """交换子若对中心是根式的，则其中心幂为 ±1，从而是挠元"""
    c = quat_commutator(g, h)
    if c.reduced_norm() != 1:
        raise InvariantViolation(f"commutator has reduced norm {c.reduced_norm()}")
    k = quat_radical_exponent(c, SubringSpec.CENTER, bound)
    if k is None:
        return CommutatorProbe(c, None, None, None)
    value = (c ** k).coords[0]
    if value not in (1, -1):
        raise InvariantViolation(f"central power of a commutator is {value}, not ±1")
    order = k if value == 1 else 2 * k
    # 阶的精确值：最小的 j 使 c^j = 1，且 j 整除 order
    one = QuatElem.scalar(1, c.params)
    power = one
    for j in range(1, order + 1):
        power = power * c
        if power == one:
            order = j
            break
    return CommutatorProbe(c, k, value, order)
