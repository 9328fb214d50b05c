"""Parser for rational-function expressions such as ``-3*t^4*(t^2-1)^2``.

Accepted syntax: integers, the variable, ``+ - * /``, ``^`` or ``**`` for
powers, parentheses and implicit products (``2t``). Exponents must be
integer constants.

The token stream is checked here so that errors report the line and column
of the offending token; evaluation is done by ``sympy.parse_expr`` on the
normalised text with a namespace that only knows numbers and the variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

import sympy
from sympy.parsing.sympy_parser import auto_number, parse_expr
from sympy.polys.polyerrors import BasePolynomialError

from exactalg.poly import Poly
from exactalg.ratfunc import RatFunc
from utils.errors import ExpressionParseError

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()−×·])"
)
_OP_ALIASES = {"−": "-", "×": "*", "·": "*", "**": "^"}
_BINARY = {"+", "-", "*", "/", "^"}
_GLOBALS = {"Integer": sympy.Integer, "Rational": sympy.Rational}


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionParseError(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "op":
                value = _OP_ALIASES.get(value, value)
            tokens.append(_Token(kind, value, pos))
        pos = m.end()
    return tokens


def _starts_operand(tok: _Token) -> bool:
    return tok.kind in ("int", "name") or tok.value == "("


def _normalise(text: str, tokens: List[_Token], variable: str) -> str:
    """Check the token sequence and return it as Python source."""
    if not tokens:
        raise ExpressionParseError(text, len(text), "empty expression")
    out: List[str] = []
    depth = 0
    want_operand = True
    for tok in tokens:
        if tok.kind == "name" and tok.value != variable:
            raise ExpressionParseError(
                text, tok.pos, f"unknown variable {tok.value!r} (expected {variable!r})"
            )
        if want_operand:
            if tok.value in ("+", "-"):
                out.append(tok.value)
                continue
            if not _starts_operand(tok):
                raise ExpressionParseError(text, tok.pos, f"unexpected {tok.value!r}")
        elif _starts_operand(tok):
            out.append("*")
        elif tok.value in _BINARY:
            out.append("**" if tok.value == "^" else tok.value)
            want_operand = True
            continue
        if tok.value == "(":
            depth += 1
            out.append("(")
            want_operand = True
        elif tok.value == ")":
            if depth == 0:
                raise ExpressionParseError(text, tok.pos, "unmatched ')'")
            depth -= 1
            out.append(")")
            want_operand = False
        else:
            out.append(str(int(tok.value)) if tok.kind == "int" else tok.value)
            want_operand = False
    if want_operand:
        raise ExpressionParseError(text, len(text), "unexpected end of expression")
    if depth:
        raise ExpressionParseError(text, len(text), "missing closing parenthesis")
    return " ".join(out)


def _first(tokens: List[_Token], value: str) -> int:
    return next((tok.pos for tok in tokens if tok.value == value), 0)


def _to_poly(expr: sympy.Expr, symbol: sympy.Symbol) -> Optional[Poly]:
    try:
        return Poly.from_sympy(sympy.Poly(expr, symbol, domain=sympy.QQ))
    except BasePolynomialError:
        return None


def parse_ratfunc(text: str, variable: str = "t") -> RatFunc:
    """Parse ``text`` into a canonical :class:`RatFunc` in ``variable``."""
    tokens = _tokenize(text)
    source = _normalise(text, tokens, variable)
    symbol = sympy.Symbol(variable)
    expr = parse_expr(
        source,
        local_dict={variable: symbol},
        global_dict=dict(_GLOBALS),
        transformations=(auto_number,),
    )
    if expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise ExpressionParseError(text, _first(tokens, "/"), "division by zero")
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    num_poly, den_poly = _to_poly(num, symbol), _to_poly(den, symbol)
    if num_poly is None or den_poly is None:
        raise ExpressionParseError(text, _first(tokens, "^"), "exponent must be an integer constant")
    if den_poly.is_zero():
        raise ExpressionParseError(text, _first(tokens, "/"), "division by zero")
    return RatFunc(num_poly, den_poly)


def parse_polynomial(text: str, variable: str = "t") -> Poly:
    value = parse_ratfunc(text, variable)
    if not value.is_polynomial():
        raise ExpressionParseError(text, 0, "expected a polynomial")
    return value.num
