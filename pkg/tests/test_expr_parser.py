from fractions import Fraction

import pytest
from hypothesis import given, settings

from errors import BadArguments, NeedsDepth, ParseError, ZeroInversion
from expr_parser import BinOp, GeneratorRef, Inv, Neg, Pow, eval_text, format_series, parse, parse_word, tokenize
from field_tower import FieldElem, PrimeTable
from ordered_group import GroupWord
from strategies import series
from twisted_series import Series


def test_tokenize_positions():
    tokens = tokenize('x1^-1 + 3/4')
    assert [(token.kind, token.text, token.position) for token in tokens] == [
        ('name', 'x1', 0), ('op', '^', 2), ('op', '-', 3), ('number', '1', 4),
        ('op', '+', 6), ('number', '3/4', 8), ('end', '', 11),
    ]


def test_precedence():
    node = parse('-x1^2*s1 + 1')
    assert isinstance(node, BinOp) and node.op == '+'
    product = node.left
    assert isinstance(product, BinOp) and product.op == '*'
    assert isinstance(product.left, Neg)
    assert isinstance(product.left.operand, Pow)
    assert product.left.operand.exponent == 2


def test_left_associative_subtraction():
    assert eval_text('x1 - x2 - x1') == -Series.generator(2)


def test_spans():
    node = parse('inv(1 - x1, 2)')
    assert isinstance(node, Inv)
    assert (node.start, node.end, node.depth) == (0, 14, 2)
    inner = parse('(x1)')
    assert isinstance(inner, GeneratorRef)
    assert (inner.start, inner.end) == (0, 4)


@pytest.mark.parametrize('text, position', [
    ('x1^', 3),
    ('1 +', 3),
    ('x1 x2', 3),
    ('inv(x1, 0)', 8),
    ('gamma(2/3)', 6),
    ('foo(1)', 0),
    ('x0', 0),
    ('3/0', 0),
    ('x1 $ 2', 3),
    ('comm(x1 s1)', 8),
])
def test_parse_errors_report_offsets(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position


def test_parse_error_message_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse('x1^')
    assert info.value.expected == ('-', 'integer')
    assert str(info.value).endswith("at offset 3 (expected one of: -, integer)")


def test_twisted_product():
    assert format_series(eval_text('s1*x1 - x1*s1')) == '2*s1*x1'
    assert eval_text('x1*s2') == eval_text('s2*x1')


def test_rational_arithmetic():
    assert eval_text('1/2 + 1/3') == Series.scalar(Fraction(5, 6))
    assert eval_text('s1*s1') == 2
    assert eval_text('s1*s1', PrimeTable((3, 5))) == Series.scalar(3, PrimeTable((3, 5)))


def test_gamma_power():
    value = eval_text('gamma(3)^2')
    assert value.coefficient(GroupWord({1: -1, 2: -1})) == FieldElem.rational(2)
    assert value.coefficient(GroupWord({1: -2})) == FieldElem.rational(1)


def test_commutator_and_inverse():
    assert eval_text('comm(x1, s1, 1)') == -1
    assert eval_text('comm(x1, x2)') == 1
    value = eval_text('inv(1 - x1, 2)')
    assert value.trunc == 2
    assert format_series(value) == '1*e + 1*x1 + 1*x1^2'
    assert eval_text('inv(1 - x1)', depth=3).trunc == 3


def test_negative_powers():
    assert eval_text('x1^-2') == Series.generator(1, -2)
    assert eval_text('(2*s1)^-1') == Series.scalar(FieldElem({(1,): Fraction(1, 4)}))
    with pytest.raises(NeedsDepth):
        eval_text('(1 - x1)^-1')
    with pytest.raises(ZeroInversion):
        eval_text('0^-1')
    with pytest.raises(ZeroInversion):
        eval_text('inv(x1 - x1, 2)')


def test_parse_word():
    assert parse_word('x1^-1*x3^2') == GroupWord({1: -1, 3: 2})
    assert parse_word('e') == GroupWord()
    with pytest.raises(BadArguments):
        parse_word('2*x1')
    with pytest.raises(BadArguments):
        parse_word('x1 + x2')
    with pytest.raises(BadArguments):
        parse_word('0')


@settings(max_examples=60, deadline=None)
@given(series())
def test_canonical_text_reparses(value):
    assert eval_text(format_series(value)) == value


def test_gamma_text_parses_to_gamma():
    assert eval_text('1*x1^-1 + 1*x2^-1') == eval_text('gamma(2)')
