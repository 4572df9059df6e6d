"""Parsing of group words, ring expressions and matrix literals.

Grammar::

    word     := term { term }            terms separated by whitespace
    term     := NAME [ '^' INT ]
    ringexpr := product { ('+' | '-') product }
    product  := unary { '*' unary }
    unary    := '-' unary | atom [ '^' INT ]
    atom     := RATIONAL | NAME | '(' ringexpr ')' | matrix
    matrix   := '[' row { ',' row } ']'
    row      := '[' ringexpr { ',' ringexpr } ']'
"""

import logging
from dataclasses import dataclass

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from graded_goldie.exceptions import ExpressionSyntaxError, InstanceMismatch, UnknownSymbol
from graded_goldie.rings import GradedMatrixRing

logger = logging.getLogger(__name__)

GROUP_WORD = "group-word"
RING_ELEMENT = "ring-element"
MATRIX = "matrix"
KINDS = (GROUP_WORD, RING_ELEMENT, MATRIX)

_GRAMMAR = r"""
word: term+
term: NAME ("^" EXPONENT)?

?ringexpr: product
    | ringexpr "+" product -> add
    | ringexpr "-" product -> sub

?product: unary
    | product "*" unary -> mul

?unary: power
    | "-" unary -> neg

?power: atom
    | atom "^" EXPONENT -> pow

?atom: RATIONAL -> number
    | NAME -> symbol
    | "(" ringexpr ")"
    | matrix

matrix: "[" row ("," row)* "]"
row: "[" ringexpr ("," ringexpr)* "]"

NAME: /[A-Za-z][A-Za-z0-9_]*/
RATIONAL: /\d+(\/\d+)?/
EXPONENT: /[+-]?\d+/

%import common.WS
%ignore WS
"""

_word_parser = Lark(_GRAMMAR, start="word", parser="lalr")
_ring_parser = Lark(_GRAMMAR, start="ringexpr", parser="lalr")


@dataclass(frozen=True)
class Number:
    text: str


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Matrix:
    rows: tuple


class ASTBuilder(Transformer):
    def word(self, terms):
        return list(terms)

    def term(self, items):
        name = str(items[0])
        return (name, int(items[1]) if len(items) > 1 else 1)

    def number(self, items):
        return Number(str(items[0]))

    def symbol(self, items):
        return Symbol(str(items[0]))

    def pow(self, items):
        return Power(items[0], int(items[1]))

    def add(self, items):
        return BinaryOp("+", items[0], items[1])

    def sub(self, items):
        return BinaryOp("-", items[0], items[1])

    def mul(self, items):
        return BinaryOp("*", items[0], items[1])

    def neg(self, items):
        return Neg(items[0])

    def row(self, items):
        return tuple(items)

    def matrix(self, rows):
        return Matrix(tuple(rows))


def _parse(parser, text):
    try:
        tree = parser.parse(text)
    except UnexpectedInput as e:
        position = getattr(e, "pos_in_stream", None)
        raise ExpressionSyntaxError(f"cannot parse {text!r} at position {position}", position=position) from e
    return ASTBuilder().transform(tree)


def parse_word(group, text):
    """Normal form of a whitespace-separated word such as ``r^3 s r^-1``."""
    return group.normalize_word(_parse(_word_parser, text))


def parse_ast(text):
    return _parse(_ring_parser, text)


def evaluate(ring, node):
    """Value of an expression tree in ``ring``; matrix literal entries are read in the base ring.

    Raises:
        UnknownSymbol: For a name the ring does not define.
        InstanceMismatch: For a matrix literal outside a matrix ring or of the wrong size.
    """
    match node:
        case Number(text):
            return ring.scalar(ring.field.parse(text))
        case Symbol(name):
            table = ring.symbols()
            if name not in table:
                raise UnknownSymbol(f"unknown symbol '{name}' in {ring.describe()}")
            return table[name]
        case Power(Symbol(name), exponent):
            return ring.symbol_power(name, exponent)
        case Power(base, exponent):
            return ring.power_value(evaluate(ring, base), exponent)
        case Neg(operand):
            return ring.neg(evaluate(ring, operand))
        case BinaryOp("+", left, right):
            return ring.add(evaluate(ring, left), evaluate(ring, right))
        case BinaryOp("-", left, right):
            return ring.sub(evaluate(ring, left), evaluate(ring, right))
        case BinaryOp("*", left, right):
            return ring.mul(evaluate(ring, left), evaluate(ring, right))
        case Matrix(rows):
            if not isinstance(ring, GradedMatrixRing):
                raise InstanceMismatch(f"matrix literal given for {ring.describe()}")
            return ring.from_rows([[evaluate(ring.base, entry) for entry in row] for row in rows])
    raise TypeError(f"unexpected expression node {node!r}")


def parse_element(ring, text):
    """Parse and evaluate a ring expression, returning a GradedElement.

    Raises:
        ExpressionSyntaxError: If the text does not match the grammar.
        UnknownSymbol: For an unknown name.
        InstanceMismatch: If the value lies outside the ring.
    """
    value = evaluate(ring, parse_ast(text))
    if not ring.contains_value(value):
        raise InstanceMismatch(f"{ring.format_value(value)} is not an element of {ring.describe()}")
    return ring.element(value)


def parse_expression(kind, text, target):
    """Parse ``text`` as a group word (target is a group) or a ring element/matrix (target is a ring)."""
    logger.debug("Parsing %s %r", kind, text)
    if kind == GROUP_WORD:
        return parse_word(target, text)
    if kind == RING_ELEMENT:
        return parse_element(target, text)
    if kind == MATRIX:
        if not isinstance(parse_ast(text), Matrix):
            raise ExpressionSyntaxError(f"{text!r} is not a matrix literal", position=0)
        return parse_element(target, text)
    raise ValueError(f"unknown expression kind '{kind}', expected one of {', '.join(KINDS)}")
