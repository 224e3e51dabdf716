"""
级数表达式语言：词法分析、递归下降语法分析与求值

文法（优先级从高到低：^ > 一元负号 > * > + -，二元运算左结合）：

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := '-' unary | power
    power := atom ('^' ['-'] INTEGER)?
    atom  := RATIONAL | s<i> | x<i> | e | gamma(INTEGER)
           | inv(expr [, INTEGER]) | comm(expr, expr [, INTEGER]) | '(' expr ')'
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from errors import BadArguments, NeedsDepth, ParseError, ZeroInversion
from field_tower import DEFAULT_TABLE, PrimeTable
from ordered_group import IDENTITY, GroupWord
from twisted_series import GammaSpec, Series, gamma_series, sr_commutator

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^(),])
""", re.VERBOSE)

ATOM_START = ('(', 'comm(', 'e', 'gamma(', 'inv(', 'rational', 's<i>', 'x<i>')
GENERATOR_NAME = re.compile(r'([sx])(\d+)$')


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int

    @property
    def end(self) -> int:
        return self.position + len(self.text)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise ParseError(f"unexpected character {text[position]!r}", position, ATOM_START)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append(Token(kind, match.group(), position))
        position = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


# -- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    start: int
    end: int


@dataclass(frozen=True)
class RationalLit(Node):
    value: Fraction


@dataclass(frozen=True)
class SqrtRef(Node):
    index: int


@dataclass(frozen=True)
class GeneratorRef(Node):
    index: int


@dataclass(frozen=True)
class IdentityRef(Node):
    pass


@dataclass(frozen=True)
class GammaRef(Node):
    N: int


@dataclass(frozen=True)
class Neg(Node):
    operand: 'Expr'


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Pow(Node):
    base: 'Expr'
    exponent: int


@dataclass(frozen=True)
class Inv(Node):
    operand: 'Expr'
    depth: Optional[int]


@dataclass(frozen=True)
class Comm(Node):
    left: 'Expr'
    right: 'Expr'
    depth: Optional[int]


Expr = Union[RationalLit, SqrtRef, GeneratorRef, IdentityRef, GammaRef, Neg, BinOp, Pow, Inv, Comm]


class Parser:
    """递归下降；错误携带源偏移与期望的记号集合"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != 'end':
            self.index += 1
        return token

    def _at(self, text: str) -> bool:
        return self.current.kind == 'op' and self.current.text == text

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            raise self._error(f"expected {text!r}", (text,))
        return self._advance()

    def _error(self, message: str, expected) -> ParseError:
        token = self.current
        found = 'end of input' if token.kind == 'end' else repr(token.text)
        return ParseError(f"{message}, found {found}", token.position, expected)

    def parse(self) -> Expr:
        node = self._expr()
        if self.current.kind != 'end':
            raise self._error("unexpected trailing input", ('*', '+', '-', 'end of input'))
        return node

    def _expr(self) -> Expr:
        node = self._term()
        while self._at('+') or self._at('-'):
            op = self._advance().text
            right = self._term()
            node = BinOp(node.start, right.end, op, node, right)
        return node

    def _term(self) -> Expr:
        node = self._unary()
        while self._at('*'):
            self._advance()
            right = self._unary()
            node = BinOp(node.start, right.end, '*', node, right)
        return node

    def _unary(self) -> Expr:
        if self._at('-'):
            start = self._advance().position
            operand = self._unary()
            return Neg(start, operand.end, operand)
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if not self._at('^'):
            return base
        self._advance()
        sign = 1
        if self._at('-'):
            self._advance()
            sign = -1
        token = self.current
        if token.kind != 'number' or '/' in token.text:
            raise self._error("exponent must be an integer", ('-', 'integer'))
        self._advance()
        return Pow(base.start, token.end, base, sign * int(token.text))

    def _integer(self, what: str) -> Token:
        token = self.current
        if token.kind != 'number' or '/' in token.text:
            raise self._error(f"{what} must be an integer", ('integer',))
        if int(token.text) < 1:
            raise ParseError(f"{what} must be positive", token.position, ('positive integer',))
        return self._advance()

    def _optional_depth(self) -> Optional[int]:
        if not self._at(','):
            return None
        self._advance()
        return int(self._integer('depth').text)

    def _atom(self) -> Expr:
        token = self.current
        if token.kind == 'number':
            self._advance()
            numerator, _, denominator = token.text.partition('/')
            if denominator and int(denominator) == 0:
                raise ParseError("zero denominator", token.position, ('rational',))
            return RationalLit(token.position, token.end, Fraction(int(numerator), int(denominator or 1)))
        if self._at('('):
            self._advance()
            inner = self._expr()
            close = self._expect(')')
            return _respan(inner, token.position, close.end)
        if token.kind == 'name':
            return self._named(token)
        raise self._error("expected an operand", ATOM_START)

    def _named(self, token: Token) -> Expr:
        match = GENERATOR_NAME.match(token.text)
        if match:
            index = int(match.group(2))
            if index < 1:
                raise ParseError("generator index must be positive", token.position, ('s<i>', 'x<i>'))
            self._advance()
            cls = SqrtRef if match.group(1) == 's' else GeneratorRef
            return cls(token.position, token.end, index)
        if token.text == 'e':
            self._advance()
            return IdentityRef(token.position, token.end)
        if token.text == 'gamma':
            self._advance()
            self._expect('(')
            N = int(self._integer('gamma length').text)
            close = self._expect(')')
            return GammaRef(token.position, close.end, N)
        if token.text == 'inv':
            self._advance()
            self._expect('(')
            operand = self._expr()
            depth = self._optional_depth()
            close = self._expect(')')
            return Inv(token.position, close.end, operand, depth)
        if token.text == 'comm':
            self._advance()
            self._expect('(')
            left = self._expr()
            self._expect(',')
            right = self._expr()
            depth = self._optional_depth()
            close = self._expect(')')
            return Comm(token.position, close.end, left, right, depth)
        raise ParseError(f"unknown name {token.text!r}", token.position, ATOM_START)


def _respan(node: Expr, start: int, end: int) -> Expr:
    # 括号把跨度扩展到外层括号
    fields = dict(node.__dict__)
    fields.update(start=start, end=end)
    return type(node)(**fields)


def parse(text: str) -> Expr:
    return Parser(text).parse()


class Evaluator:
    """自底向上求值为 Series；inv/comm 省略深度时使用默认深度"""

    def __init__(self, table: PrimeTable = DEFAULT_TABLE, depth: int = 4):
        self.table = table
        self.depth = depth

    def evaluate(self, node: Expr) -> Series:
        if isinstance(node, RationalLit):
            return Series.scalar(node.value, self.table)
        if isinstance(node, SqrtRef):
            return Series.sqrt(node.index, self.table)
        if isinstance(node, GeneratorRef):
            return Series.generator(node.index, table=self.table)
        if isinstance(node, IdentityRef):
            return Series.monomial(IDENTITY, 1, self.table)
        if isinstance(node, GammaRef):
            return gamma_series(GammaSpec(node.N), self.table)
        if isinstance(node, Neg):
            return -self.evaluate(node.operand)
        if isinstance(node, BinOp):
            left, right = self.evaluate(node.left), self.evaluate(node.right)
            if node.op == '+':
                return left + right
            if node.op == '-':
                return left - right
            return left * right
        if isinstance(node, Pow):
            base = self.evaluate(node.base)
            if node.exponent < 0 and base.is_zero():
                raise ZeroInversion(f"0 raised to {node.exponent} at offset {node.start}")
            if node.exponent < 0 and not base.is_monomial():
                raise NeedsDepth(f"negative power of a non-monomial at offset {node.start}; use inv(expr, depth)")
            return base ** node.exponent
        if isinstance(node, Inv):
            return self.evaluate(node.operand).inverse(node.depth or self.depth)
        if isinstance(node, Comm):
            return sr_commutator(self.evaluate(node.left), self.evaluate(node.right), node.depth or self.depth)
        raise TypeError(f"not an expression node: {node!r}")


def evaluate(node: Expr, table: PrimeTable = DEFAULT_TABLE, depth: int = 4) -> Series:
    return Evaluator(table, depth).evaluate(node)


def eval_text(text: str, table: PrimeTable = DEFAULT_TABLE, depth: int = 4) -> Series:
    node = parse(text)
    logger.debug("parsed %r as %s", text, type(node).__name__)
    return evaluate(node, table, depth)


def format_series(series: Series) -> str:
    """规范文本：各项按群序排列，系数内按根式指标字典序排列"""
    return series.to_text()


def parse_word(text: str, table: PrimeTable = DEFAULT_TABLE) -> GroupWord:
    """群元素文本（如 x1^-1*x3^2 或 e）"""
    value = eval_text(text, table)
    if value.is_zero() or not value.is_monomial():
        raise BadArguments(f"{text!r} is not a group word")
    word, coeff = value.leading()
    if coeff != 1:
        raise BadArguments(f"{text!r} has coefficient {coeff}, expected a bare group word")
    return word
