"""Parsing of surface and offset expressions

Grammar (standard precedence, `^` right-associative and tighter than unary minus):

    expr   := term (("+"|"-") term)* ;
    term   := factor (("*"|"/") factor)* ;
    factor := "-" factor | power ;
    power  := atom ("^" factor)? ;
    atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")" ;
"""

import re
from typing import AbstractSet, List, NamedTuple

from e4surf.errors import ConfigError, ExpressionSyntaxError, UnknownFunctionError, UnknownIdentifierError
from e4surf.expr.nodes import (
    FUNCTIONS,
    VARIABLES,
    BinaryOp,
    Expression,
    FunctionCall,
    Negate,
    Number,
    Parameter,
    Variable,
)

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


class _Token(NamedTuple):
    kind: str
    text: str
    offset: int


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _tokenize(text: str) -> List[_Token]:
    """Splits text into tokens

    Args:
        text (str): Expression text

    Returns:
        list: Tokens terminated by an `end` token
    """
    tokens: List[_Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if not match or match.end() == position or match.lastgroup is None:
            stripped = len(text) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character '{text[stripped]}'", _byte_offset(text, stripped))
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(_Token(kind, match.group(kind), _byte_offset(text, start)))
        position = match.end()
    tokens.append(_Token("end", "", _byte_offset(text, len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str, params: AbstractSet[str]) -> None:
        self.tokens = _tokenize(text)
        self.params = params
        self.index = 0

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _at_op(self, *ops: str) -> bool:
        token = self._peek()
        return token.kind == "op" and token.text in ops

    def _expect(self, op: str) -> None:
        token = self._peek()
        if not (token.kind == "op" and token.text == op):
            found = token.text or "end of input"
            raise ExpressionSyntaxError(f"expected '{op}', found '{found}'", token.offset)
        self._advance()

    def parse(self) -> Expression:
        e = self._expr()
        token = self._peek()
        if token.kind != "end":
            raise ExpressionSyntaxError(f"unexpected '{token.text}'", token.offset)
        return e

    def _expr(self) -> Expression:
        left = self._term()
        while self._at_op("+", "-"):
            op = self._advance().text
            left = BinaryOp(op, left, self._term())
        return left

    def _term(self) -> Expression:
        left = self._factor()
        while self._at_op("*", "/"):
            op = self._advance().text
            left = BinaryOp(op, left, self._factor())
        return left

    def _factor(self) -> Expression:
        if self._at_op("-"):
            self._advance()
            return Negate(self._factor())
        return self._power()

    def _power(self) -> Expression:
        base = self._atom()
        if self._at_op("^"):
            self._advance()
            return BinaryOp("^", base, self._factor())
        return base

    def _atom(self) -> Expression:
        token = self._advance()
        if token.kind == "number":
            return Number(float(token.text))
        if token.kind == "ident":
            if self._at_op("("):
                if token.text not in FUNCTIONS:
                    raise UnknownFunctionError(token.text, token.offset)
                self._advance()
                argument = self._expr()
                self._expect(")")
                return FunctionCall(token.text, argument)
            if token.text in VARIABLES:
                return Variable(token.text)
            if token.text in self.params:
                return Parameter(token.text)
            raise UnknownIdentifierError(token.text, token.offset)
        if token.kind == "op" and token.text == "(":
            inner = self._expr()
            self._expect(")")
            return inner
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"unexpected '{found}'", token.offset)


def parse_expression(text: str, params: AbstractSet[str] = frozenset()) -> Expression:
    """Parses an expression in u, v and the declared parameters

    Args:
        text (str): Expression text
        params (set): Declared parameter names

    Returns:
        Expression: Parsed tree
    """
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    clashing = set(params) & VARIABLES
    if clashing:
        raise ConfigError(f"parameter names cannot shadow variables: {sorted(clashing)}")
    return _Parser(text, params).parse()
