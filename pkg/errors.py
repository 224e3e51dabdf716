"""
异常定义
"""
from typing import Iterable, Optional


class MnforgeError(Exception):
    """所有领域异常的基类"""


class ZeroInversion(MnforgeError, ZeroDivisionError):
    """对零元素求逆"""


class TruncatedInput(MnforgeError):
    """操作要求精确值，但输入带有截断标记"""


class MixedTruncation(MnforgeError):
    """精确值与截断值之间的比较"""


class BadArguments(MnforgeError, ValueError):
    """参数不满足前置条件"""


class DimensionMismatch(MnforgeError, ValueError):
    """代数参数或坐标长度不一致"""


class SingularElement(MnforgeError):
    """元素不可逆（零或零因子）"""


class NeedsDepth(MnforgeError):
    """非单项式的负指数需要显式的 inv(expr, depth)"""


class ConfigError(MnforgeError, ValueError):
    """配置无效"""


class InvariantViolation(MnforgeError, AssertionError):
    """计算得到的恒等式不成立"""


class ParseError(MnforgeError):
    """表达式解析失败"""

    def __init__(self, message: str, position: int, expected: Optional[Iterable[str]] = None):
        self.position = position
        self.expected = tuple(sorted(set(expected or ())))
        detail = f"{message} at offset {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
