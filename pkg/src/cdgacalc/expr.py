"""Parser for element expressions such as ``a^2 - 3/2*b*g + k*h``.

Grammar (whitespace insignificant)::

    expr   := [sign] term (('+'|'-') term)*
    term   := atom ('*' atom)*
    atom   := int ['/' int] | ident ['^' nat] | ident '[' nat ']'

Identifiers are generator names or run parameters (e.g. ``k``).  ``x[i]``
denotes the divided power ``x_[i]``.  Products are normalised through the
algebra's multiplication, so Koszul signs are applied as factors are
reordered.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .gradedalg import DIVIDED, Element, TruncationError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.col}: {text!r}")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, alg, text: str, params: dict):
        self.alg = alg
        self.F = alg.field
        self.text = text
        self.params = params
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def nat(self):
        t = self.take()
        if t[0] != "int":
            self.error("expected a natural number", t)
        return int(t[1])

    def expr(self) -> Element:
        total = self.alg.zero()
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        while True:
            term = self.term()
            total = total + (term if sign > 0 else -term)
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                sign = -1 if t[1] == "-" else 1
                continue
            if t[0] != "end":
                self.error(f"unexpected {t[1]!r}")
            return total

    def term(self) -> Element:
        out = self.atom()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            out = out * self.atom()
        return out

    def coefficient(self, value: Fraction, tok) -> Element:
        try:
            return self.alg.one().scale(value)
        except ZeroDivisionError:
            self.error(f"coefficient {value} is not defined over {self.F}", tok)

    def atom(self) -> Element:
        t = self.take()
        if t[0] == "int":
            num = int(t[1])
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den_tok = self.peek()
                den = self.nat()
                if den == 0:
                    self.error("division by zero", den_tok)
                return self.coefficient(Fraction(num, den), t)
            return self.coefficient(Fraction(num), t)
        if t[0] != "ident":
            self.error("expected a coefficient or identifier", t)
        name = t[1]
        if name in self.alg._names:
            if name in self.params:
                self.error(f"{name!r} is both a generator and a parameter", t)
            i = self.alg.index(name)
            if self.peek()[0] == "op" and self.peek()[1] == "[":
                self.take()
                e = self.nat()
                self.expect_op("]")
                if self.alg.generators[i].flavor != DIVIDED:
                    self.error(f"{name} is not a divided-power generator", t)
                base = self.alg.monomial(self.alg.factor_power(i, e)) if e else self.alg.one()
            else:
                base = self.alg.gen(name)
                if self.peek()[0] == "op" and self.peek()[1] == "^":
                    self.take()
                    base = base ** self.nat()
            return base
        if name in self.params:
            value = Fraction(self.params[name])
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.take()
                value = value ** self.nat()
            return self.coefficient(value, t)
        self.error(f"unknown identifier {name!r}", t)


def parse_element(alg, text: str, params: dict | None = None) -> Element:
    """Parse ``text`` into an element of ``alg``.

    Raises :class:`ParseError` on syntax errors and unknown identifiers, and
    :class:`TruncationError` if the expression has terms above the truncation.
    """
    if not text.strip():
        raise ParseError("empty expression", text, 0)
    u = _Parser(alg, text, params or {}).expr()
    if u.lossy:
        raise TruncationError(f"{text!r} has terms above truncation {alg.truncation}")
    return u
