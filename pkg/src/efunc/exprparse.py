"""Recursive-descent parser for rational functions over a number field.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := NUMBER | 't' | 'z' | '(' expr ')'

``NUMBER`` is an integer or a terminating decimal; ``p/q`` is ordinary
division.  ``t`` is the field generator and ``z`` the variable.
"""

import re
from fractions import Fraction

from .errors import DivisionByZeroPolynomial, ParseError
from .ratfun import Poly, RatFun

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([tz])|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        kind = ("num", "sym", "op")[m.lastindex - 1]
        val = m.group(m.lastindex)
        if val == "**":
            val = "^"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZeroPolynomial(f"division by zero at position {tok[2]}")
                val = val / rhs
        return val

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.error("exponent must be a non-negative integer literal", tok)
            n = int(tok[1])
            if neg:
                if base.is_zero():
                    raise DivisionByZeroPolynomial(f"zero to a negative power at position {tok[2]}")
                return base.inverse() ** n
            return base ** n
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return RatFun.const(self.field, Fraction(val))
        if kind == "sym":
            if val == "z":
                return RatFun(Poly.z(self.field))
            return RatFun.const(self.field, self.field.gen)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def parse_ratfun(text, field):
    """Parse ``text`` into an exact :class:`RatFun` over ``field``."""
    return _Parser(text, field).parse()


def parse_poly(text, field):
    r = parse_ratfun(text, field)
    if not r.is_polynomial():
        raise ParseError("expected a polynomial", text, 0)
    return r.num


def parse_element(text, field):
    """A field element: coordinate list ``[a, b, ...]`` or a constant expression in t."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError("unterminated coordinate list", text, len(text))
        body = s[1:-1].strip()
        parts = [p.strip() for p in body.split(",")] if body else []
        coords = []
        for p in parts:
            try:
                coords.append(Fraction(p))
            except ValueError:
                raise ParseError(f"bad coordinate {p!r}", text, text.find(p)) from None
        if len(coords) > field.degree:
            raise ParseError(f"too many coordinates for a degree-{field.degree} field", text, 0)
        return field.element(coords)
    r = parse_ratfun(s, field)
    if not r.is_constant():
        raise ParseError("expected a constant (no z)", text, max(s.find("z"), 0))
    return r.num.coeff(0)
