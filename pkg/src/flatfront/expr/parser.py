"""
parser.py – Recursive-descent parser for the expression grammar.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?
    primary := NUMBER | 'i' | 'z' | PARAM | FUNC '(' args ')' | '(' expr ')'

``^`` is right-associative and binds tighter than unary minus, so ``-z^2`` is
``-(z^2)`` and ``z^-2`` is ``z^(-2)``. Functions: ``exp``, ``log``, ``sqrt`` with
one argument and ``pow(base, exponent)``. Named parameters are bound to numbers
at parse time.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Optional, Union

from flatfront.exceptions import ExprSyntaxError, UnknownIdentifierError
from flatfront.expr import nodes
from flatfront.expr.nodes import Const, Expr

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)

_UNARY_FUNCS = {"exp": nodes.exp, "log": nodes.log, "sqrt": nodes.sqrt}
_RESERVED = {"i", "z", "pow", *_UNARY_FUNCS}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(source, pos, f"unexpected character {source[pos]!r}")
        kind = m.lastgroup or ""
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, params: Mapping[str, complex]) -> None:
        self.source = source
        self.params = params
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def _expect(self, text: str) -> None:
        if not self._accept(text):
            found = self.tok.text or "end of input"
            raise ExprSyntaxError(self.source, self.tok.pos, f"expected {text!r}, found {found!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(self.source, self.tok.pos, f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self._accept("+"):
                e = nodes.add(e, self.term())
            elif self._accept("-"):
                e = nodes.sub(e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while True:
            if self._accept("*"):
                e = nodes.mul(e, self.unary())
            elif self._accept("/"):
                e = nodes.div(e, self.unary())
            else:
                return e

    def unary(self) -> Expr:
        if self._accept("-"):
            return nodes.neg(self.unary())
        if self._accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self._accept("^"):
            return nodes.power(base, self.unary())
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "number":
            self._advance()
            return Const(float(t.text))
        if t.kind == "name":
            return self._name()
        if self._accept("("):
            e = self.expr()
            self._expect(")")
            return e
        found = t.text or "end of input"
        raise ExprSyntaxError(self.source, t.pos, f"expected an operand, found {found!r}")

    def _name(self) -> Expr:
        t = self._advance()
        name = t.text
        if name == "z":
            return nodes.Z
        if name == "i":
            return Const(1j)
        if name in _UNARY_FUNCS:
            self._expect("(")
            arg = self.expr()
            self._expect(")")
            return _UNARY_FUNCS[name](arg)
        if name == "pow":
            self._expect("(")
            base = self.expr()
            self._expect(",")
            exponent = self.expr()
            self._expect(")")
            return nodes.power(base, exponent)
        if name in self.params:
            return Const(self.params[name])
        raise UnknownIdentifierError(name, t.pos)


def parse_expr(
    source: str, params: Optional[Mapping[str, Union[int, float, complex]]] = None
) -> Expr:
    """
    Parse ``source`` into an expression tree.

    Parameters
    ----------
    source:
        Expression text.
    params:
        Named constants substituted at parse time, e.g. ``{"n": 3}``.

    Returns
    -------
    Expr

    Raises
    ------
    ExprSyntaxError
        On malformed input, with the failing character position.
    UnknownIdentifierError
        On an identifier that is not z, i, a function or a bound parameter.
    """
    bound: dict[str, complex] = {}
    for name, value in (params or {}).items():
        if name in _RESERVED:
            raise ValueError(f"Parameter name {name!r} is reserved.")
        bound[name] = complex(value)
    e = _Parser(source, bound).parse()
    logger.debug("Parsed %r → %s", source, e.source)
    return e
