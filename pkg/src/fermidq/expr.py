"""Parser and evaluator for Grassmann polynomial expressions.

Grammar (whitespace insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := NUMBER | 'i' | PARAM | GENERATOR | '(' expr ')' | '-' factor

``*`` is the pointwise Grassmann product.  PARAM is one of hbar, omega, c, d,
C; GENERATOR is th<k> or pi<k>.  Generator order inside a term is preserved
in the AST and the anticommutation signs are resolved at evaluation time.
Parse errors carry the zero-based column where they occurred.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import GrassmannAlgebra, GrassmannElement

__all__ = [
    "ExpressionError",
    "ParseError",
    "PARAMETERS",
    "evaluate",
    "parse_expression",
    "pretty_print",
]

PARAMETERS = ("hbar", "omega", "c", "d", "C")

_GENERATOR_RE = re.compile(r"(th|pi)[0-9]+\Z")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*()]))"
)


class ParseError(ValueError):
    """Syntax error with the column index where it happened."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position})")
        self.position = position


class ExpressionError(ValueError):
    """Evaluation-time error (e.g. generator missing from the algebra)."""


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class Parameter:
    name: str


@dataclass(frozen=True)
class Generator:
    name: str


@dataclass(frozen=True)
class Negate:
    operand: object


@dataclass(frozen=True)
class Group:
    inner: object


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    # (sign, term) pairs; the first sign is +1 unless the source negated it
    terms: tuple


# -- tokenizer / parser ------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "ident" | "op" | "end"
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad_at]!r}", bad_at)
        if match.group("number") is not None:
            tokens.append(_Token("number", match.group(0).strip(), match.start()))
        elif match.group("ident") is not None:
            tokens.append(_Token("ident", match.group("ident"), match.start("ident")))
        else:
            tokens.append(_Token("op", match.group("op"), match.start("op")))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, text: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}", tok.position)
        return self.advance()

    def parse_expr(self):
        # a leading '-' reaches the first term through the factor rule
        terms = [(1, self.parse_term())]
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance()
            terms.append((1 if op.text == "+" else -1, self.parse_term()))
        return Sum(tuple(terms))

    def parse_term(self):
        factors = [self.parse_factor()]
        while self.peek().kind == "op" and self.peek().text == "*":
            self.advance()
            factors.append(self.parse_factor())
        return Product(tuple(factors))

    def parse_factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Negate(self.parse_factor())
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect_op(")")
            return Group(inner)
        if tok.kind == "number":
            self.advance()
            return Number(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "i":
                return ImaginaryUnit()
            if tok.text in PARAMETERS:
                return Parameter(tok.text)
            if _GENERATOR_RE.match(tok.text):
                return Generator(tok.text)
            raise ParseError(f"unknown symbol {tok.text!r}", tok.position)
        raise ParseError(
            f"expected a number, symbol or '(' but found {tok.text!r}"
            if tok.kind != "end"
            else "unexpected end of expression",
            tok.position,
        )


def parse_expression(text: str) -> Sum:
    parser = _Parser(_tokenize(text))
    ast = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(f"unexpected trailing input {tail.text!r}", tail.position)
    return ast


# -- evaluation / pretty printing --------------------------------------------


def evaluate(
    node, algebra: GrassmannAlgebra, parameters: dict[str, float]
) -> GrassmannElement:
    """Evaluate an AST to an element, resolving anticommutation signs."""
    if isinstance(node, Sum):
        out = algebra.zero()
        for sign, term in node.terms:
            out = out + sign * evaluate(term, algebra, parameters)
        return out
    if isinstance(node, Product):
        out = algebra.one()
        for factor in node.factors:
            out = out * evaluate(factor, algebra, parameters)
        return out
    if isinstance(node, Negate):
        return -evaluate(node.operand, algebra, parameters)
    if isinstance(node, Group):
        return evaluate(node.inner, algebra, parameters)
    if isinstance(node, Number):
        return algebra.scalar(node.value)
    if isinstance(node, ImaginaryUnit):
        return algebra.scalar(1j)
    if isinstance(node, Parameter):
        if node.name not in parameters:
            raise ExpressionError(f"parameter {node.name!r} has no value")
        return algebra.scalar(parameters[node.name])
    if isinstance(node, Generator):
        if node.name not in algebra.index:
            raise ExpressionError(
                f"generator {node.name!r} does not exist in this algebra"
            )
        return algebra.generator(node.name)
    raise TypeError(f"not an AST node: {node!r}")


def pretty_print(node) -> str:
    """Canonical text form; reparsing it yields an equal AST."""
    if isinstance(node, Sum):
        pieces = []
        for k, (sign, term) in enumerate(node.terms):
            text = pretty_print(term)
            if k == 0:
                pieces.append(text if sign > 0 else f"-{text}")
            else:
                pieces.append(("+ " if sign > 0 else "- ") + text)
        return " ".join(pieces)
    if isinstance(node, Product):
        return "*".join(pretty_print(f) for f in node.factors)
    if isinstance(node, Negate):
        return f"-{pretty_print(node.operand)}"
    if isinstance(node, Group):
        return f"({pretty_print(node.inner)})"
    if isinstance(node, Number):
        return repr(node.value)
    if isinstance(node, ImaginaryUnit):
        return "i"
    if isinstance(node, (Parameter, Generator)):
        return node.name
    raise TypeError(f"not an AST node: {node!r}")
