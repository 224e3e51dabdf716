"""
精确有理数线性代数（基于 sympy DomainMatrix，QQ 上运算）
"""
from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Rows = Sequence[Sequence[Fraction]]


def _to_qq(value) -> object:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def to_domain_matrix(rows: Rows, ncols: Optional[int] = None) -> DomainMatrix:
    """Fraction 二维列表转为 QQ 上的 DomainMatrix"""
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    data = [[_to_qq(entry) for entry in row] for row in rows]
    return DomainMatrix(data, (nrows, ncols), QQ)


def to_rows(matrix: DomainMatrix) -> List[List[Fraction]]:
    sym = matrix.to_Matrix()
    nrows, ncols = matrix.shape
    return [[Fraction(int(sym[i, j].p), int(sym[i, j].q)) for j in range(ncols)] for i in range(nrows)]


def rank(rows: Rows, ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    return to_domain_matrix(rows, ncols).rank()


def nullity(rows: Rows, ncols: int) -> int:
    """齐次方程组 rows · x = 0 的解空间维数"""
    if not rows:
        return ncols
    return ncols - rank(rows, ncols)


def determinant(rows: Rows) -> Fraction:
    if not rows:
        return Fraction(1)
    return _from_qq(to_domain_matrix(rows).det())


def solve(rows: Rows, rhs: Sequence[Fraction]) -> List[Fraction]:
    """求解方阵方程 rows · x = rhs，调用方需保证矩阵非奇异"""
    matrix = to_domain_matrix(rows)
    column = to_domain_matrix([[value] for value in rhs], 1)
    solution = matrix.lu_solve(column)
    return [row[0] for row in to_rows(solution)]


def matmul(left: Rows, right: Rows) -> List[List[Fraction]]:
    return to_rows(to_domain_matrix(left) * to_domain_matrix(right))
