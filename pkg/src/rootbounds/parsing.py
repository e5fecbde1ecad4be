"""Terse text format for sparse polynomial systems.

One polynomial per line (or semicolon-separated): integers, rationals like
3/4, variables x1..xn, +, -, *, ^ with integer exponents, and parentheses,
e.g. ``3*x1^10 + x1^2 - 4``.  Exponents may be negative on monomial bases,
giving Laurent terms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .newton import SparsePolynomial, SparseSystem

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<var>x\d+)|(?P<op>[-+*^();]))"
)


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    return tokens


Poly = dict[tuple[int, ...], Fraction]


def _padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, Fraction(0)) + c
    return {e: c for e, c in out.items() if c != 0}


def _pneg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


class _Parser:
    def __init__(self, tokens: list[str], n: int):
        self.tokens = tokens
        self.pos = 0
        self.n = n

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def parse_expr(self) -> Poly:
        if self.peek() == "-":
            self.take()
            acc = _pneg(self.parse_term())
        else:
            acc = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            acc = _padd(acc, rhs if op == "+" else _pneg(rhs))
        return acc

    def parse_term(self) -> Poly:
        acc = self.parse_factor()
        while self.peek() == "*":
            self.take()
            acc = _pmul(acc, self.parse_factor())
        return acc

    def parse_factor(self) -> Poly:
        base = self.parse_atom()
        if self.peek() != "^":
            return base
        self.take()
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected an integer exponent, got {tok!r}")
        k = sign * int(tok)
        if k >= 0:
            out = {tuple([0] * self.n): Fraction(1)}
            for _ in range(k):
                out = _pmul(out, base)
            return out
        if len(base) != 1:
            raise ParseError("negative exponents are only supported on monomials")
        ((e, c),) = base.items()
        return {tuple(x * k for x in e): c**k}

    def parse_atom(self) -> Poly:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "(":
            self.take()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok == "-":
            self.take()
            return _pneg(self.parse_factor())
        self.take()
        if tok.startswith("x"):
            idx = int(tok[1:])
            if not 1 <= idx <= self.n:
                raise ParseError(f"variable {tok} out of range 1..{self.n}")
            e = tuple(1 if i == idx - 1 else 0 for i in range(self.n))
            return {e: Fraction(1)}
        return {tuple([0] * self.n): Fraction(tok)}


def parse_polynomial_text(text: str, n: int) -> SparsePolynomial:
    parser = _Parser(_tokenize(text), n)
    poly = parser.parse_expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input from token {parser.peek()!r}")
    if not poly:
        raise ParseError("polynomial cancelled to zero")
    return SparsePolynomial.from_dict(poly)


def parse_system_text(text: str, n: int | None = None) -> SparseSystem:
    chunks = [
        chunk.strip()
        for line in text.splitlines()
        for chunk in line.split(";")
        if chunk.strip()
    ]
    if not chunks:
        raise ParseError("no polynomials in input")
    if n is None:
        indices = [int(v[1:]) for v in re.findall(r"x\d+", text)]
        n = max(indices) if indices else 1
    return SparseSystem.of([parse_polynomial_text(c, n) for c in chunks])
