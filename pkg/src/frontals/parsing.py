"""Parsing and rendering of polynomial expressions.

Grammar: integers, rationals written "a/b" (no spaces around the slash),
variables, the operators + - * ^ with the usual precedence, and
parentheses.  Implicit multiplication is rejected on purpose: "2x" is a
syntax error, "2*x" is not.  Errors carry line and column positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .poly import Poly, grlex_key


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "ident" | "op" | "end"
    text: str
    value: Optional[Fraction]
    line: int
    column: int


def _tokenize(text: str):
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            start_col = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            num = int(text[start:i])
            value = Fraction(num)
            # rational literal a/b, slash directly adjacent
            if i < n and text[i] == "/" and i + 1 < n and text[i + 1].isdigit():
                i += 1
                col += 1
                dstart = i
                while i < n and text[i].isdigit():
                    i += 1
                    col += 1
                den = int(text[dstart:i])
                if den == 0:
                    raise ParseError("zero denominator in rational literal", line, start_col)
                value = Fraction(num, den)
            tokens.append(_Token("number", text[start:i], value, line, start_col))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < n and (text[i].isalnum() or text[i] in "_'"):
                i += 1
                col += 1
            tokens.append(_Token("ident", text[start:i], None, line, start_col))
            continue
        if ch in "+-*^()":
            tokens.append(_Token("op", ch, None, line, col))
            i += 1
            col += 1
            continue
        if ch == "/":
            raise ParseError("'/' is only allowed inside a rational literal like 3/2", line, col)
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, vars: tuple):
        self.tokens = tokens
        self.pos = 0
        self.vars = vars

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect_op(self, text: str):
        t = self.peek()
        if t.kind != "op" or t.text != text:
            raise ParseError(f"expected {text!r}", t.line, t.column)
        return self.next()

    def parse(self) -> Poly:
        p = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(
                f"unexpected {t.text!r} (implicit multiplication is not allowed)",
                t.line,
                t.column,
            )
        return p

    def expr(self) -> Poly:
        t = self.peek()
        negate = False
        if t.kind == "op" and t.text in "+-":
            self.next()
            negate = t.text == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "+-":
                self.next()
                q = self.term()
                p = p + q if t.text == "+" else p - q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text == "*":
                self.next()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        p = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.next()
            e = self.peek()
            if e.kind == "op" and e.text == "-":
                raise ParseError("negative exponent", e.line, e.column)
            if e.kind != "number" or e.value.denominator != 1:
                raise ParseError("exponent must be a nonnegative integer", e.line, e.column)
            self.next()
            p = p ** int(e.value)
        return p

    def atom(self) -> Poly:
        t = self.next()
        if t.kind == "number":
            return Poly.const(self.vars, t.value)
        if t.kind == "ident":
            if t.text not in self.vars:
                raise ParseError(f"unknown identifier {t.text!r}", t.line, t.column)
            return Poly.variable(self.vars, t.text)
        if t.kind == "op" and t.text == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if t.kind == "op" and t.text == "-":
            return -self.atom()
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.column)


def parse_expression(text: str, vars: Sequence[str] = ("x", "y")) -> Poly:
    """Parse an expression into an exact Poly over the given variables."""
    tokens = _tokenize(text)
    return _Parser(tokens, tuple(vars)).parse()


def render(p: Poly) -> str:
    """Canonical string form; terms in descending graded-lex order.

    `parse_expression(render(p), p.vars) == p` for every polynomial.
    """
    if p.is_zero:
        return "0"
    pieces = []
    for e, c in sorted(p.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
        factors = []
        for v, k in zip(p.vars, e):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        coeff = c
        body = "*".join(factors)
        if not body:
            text = str(abs(coeff))
        elif abs(coeff) == 1:
            text = body
        else:
            text = f"{abs(coeff)}*{body}"
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, text))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out
