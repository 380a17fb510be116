"""Polynomial expression parser and the plain-text input document format.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := NUMBER | NUMBER '/' NUMBER | VAR | '(' expr ')'

Implicit multiplication is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .arith import Q, Rational
from .poly import MultiPoly


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, ch = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            out.append(("num", num, col))
        elif name is not None:
            out.append(("var", name, col))
        elif ch is not None and not ch.isspace():
            out.append(("op", ch, col))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, variables, line):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)
        self.line = line

    def err(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.line, tok[2])

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, ch):
        t = self.take()
        if t[0] != "op" or t[1] != ch:
            self.err(f"expected {ch!r}", t)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.err("empty expression")
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            if t[0] in ("num", "var") or t[1] == "(":
                self.err("implicit multiplication is not allowed", t)
            self.err(f"unexpected {t[1]!r}", t)
        return p

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if t[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        p = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] == "op" and e[1] == "-":
                self.err("negative exponent", e)
            if e[0] == "op" and e[1] == "(":
                self.err("exponent must be an integer literal", e)
            if e[0] != "num":
                self.err("non-integer exponent", e)
            if not e[1].isdigit():
                self.err("non-integer exponent", e)
            p = p ** int(e[1])
        return p

    def _number(self, tok) -> Rational:
        text = tok[1]
        if "." in text:
            self.err(f"malformed literal {text!r}", tok)
        return Q(int(text))

    def atom(self):
        t = self.take()
        if t[0] == "num":
            c = self._number(t)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    self.err("malformed literal: expected denominator", d)
                den = self._number(d)
                if den == 0:
                    self.err("zero denominator", d)
                c = c / den
            return MultiPoly.constant(self.vars, c)
        if t[0] == "var":
            if t[1] not in self.vars:
                self.err(f"unknown variable {t[1]!r}", t)
            return MultiPoly.var(self.vars, t[1])
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            self.expect(")")
            return p
        if t[0] == "end":
            self.err("unexpected end of expression", t)
        self.err(f"unexpected {t[1]!r}", t)


def parse_poly(text: str, variables, line: int = 1) -> MultiPoly:
    """Parse ``text`` into an exact polynomial over ``variables``."""
    return _Parser(text, variables, line).parse()


def parse_rational(text: str, line: int = 1, column: int = 1) -> Rational:
    s = text.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", s):
        raise ParseError(f"malformed rational {s!r}", line, column)
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ParseError("zero denominator", line, column)
    return Q(int(num), int(den) if den else 1)


@dataclass
class InputDocument:
    variables: tuple
    generators: list
    ideal_a: list = field(default_factory=list)
    t: Rational | None = None
    levels: int | None = None
    order: int | None = None
    source: str = ""


_KEYS = ("vars", "gen", "ideal_a", "t", "levels", "order")


def parse_document(text: str, source: str = "") -> InputDocument:
    """Parse the line-oriented input format (``vars:``, ``gen:``,
    ``ideal_a:``, ``t:``, ``levels:``, ``order:``; ``#`` comments)."""
    variables = None
    gens, ideal_a = [], []
    t = levels = order = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise ParseError(f"unrecognized line {raw.strip()!r}", lineno, 1)
        offset = len(key) + 1 + (len(rest) - len(rest.lstrip()))
        body = rest.strip()
        if key == "vars":
            if variables is not None:
                raise ParseError("duplicate vars line", lineno, 1)
            names = [v.strip() for v in body.split(",")]
            for v in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                    raise ParseError(f"bad variable name {v!r}", lineno, offset + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, offset + 1)
            variables = tuple(names)
            continue
        if key in ("gen", "ideal_a"):
            if variables is None:
                raise ParseError("vars must be declared before expressions", lineno, 1)
            try:
                p = parse_poly(body, variables, lineno)
            except ParseError as e:
                raise ParseError(e.message, lineno, e.column + offset) from None
            (gens if key == "gen" else ideal_a).append(p)
        elif key == "t":
            t = parse_rational(body, lineno, offset + 1)
            if t < 0:
                raise ParseError("t must be non-negative", lineno, offset + 1)
        else:
            if not re.fullmatch(r"\d+", body):
                raise ParseError(f"{key} must be a non-negative integer", lineno, offset + 1)
            if key == "levels":
                levels = int(body)
            else:
                order = int(body)
    if variables is None:
        raise ParseError("missing vars line", 1, 1)
    if not gens:
        raise ParseError("no gen lines", 1, 1)
    return InputDocument(variables, gens, ideal_a, t, levels, order, source)
