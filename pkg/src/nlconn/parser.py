"""Recursive-descent parser for polynomial expressions in x1..xn, y1..yn.

Grammar::

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := base ("^" uint)?
    base     := rational | var | "(" expr ")" | "-" base
    rational := int ("/" uint)?
    var      := ("x" | "y") uint        with 1 <= uint <= n

Whitespace is insignificant.  Error positions are 1-based character offsets.
"""

from __future__ import annotations

from fractions import Fraction

from .ratpoly import MultiPoly

MAX_EXPONENT = 16


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.reason = message


class _Parser:
    def __init__(self, src: str, n: int):
        self.src = src
        self.n = n
        self.N = 2 * n
        self.pos = 0

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def error(self, message: str, at: int | None = None):
        raise ParseError(message, (self.pos if at is None else at) + 1)

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.src[start:self.pos])

    def parse(self) -> MultiPoly:
        if not self.src.strip():
            self.error("empty expression")
        value = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.src[self.pos]!r}")
        return value

    def expr(self) -> MultiPoly:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.src[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> MultiPoly:
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> MultiPoly:
        value = self.base()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            at = self.pos
            k = self.uint()
            if k > MAX_EXPONENT:
                self.error(f"exponent {k} exceeds cap {MAX_EXPONENT}", at)
            value = value ** k
        return value

    def base(self) -> MultiPoly:
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.base()
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if c.isdigit():
            num = self.uint()
            if self.peek() == "/":
                self.pos += 1
                self.skip()
                at = self.pos
                den = self.uint()
                if den == 0:
                    self.error("zero denominator", at)
                return MultiPoly.const(self.N, Fraction(num, den))
            return MultiPoly.const(self.N, num)
        if c.isalpha():
            start = self.pos
            while self.pos < len(self.src) and self.src[self.pos].isalpha():
                self.pos += 1
            letters = self.src[start:self.pos]
            digits_start = self.pos
            while self.pos < len(self.src) and self.src[self.pos].isdigit():
                self.pos += 1
            name = self.src[start:self.pos]
            if letters not in ("x", "y") or digits_start == self.pos:
                self.error(f"unknown variable {name!r}", start)
            idx = int(self.src[digits_start:self.pos])
            if not 1 <= idx <= self.n:
                self.error(f"variable index out of range ({name!r} with n={self.n})", start)
            offset = 0 if letters == "x" else self.n
            return MultiPoly.var(self.N, offset + idx - 1)
        if not c:
            self.error("unexpected end of expression")
        self.error(f"unexpected character {c!r}")


def parse_expression(src: str, n: int) -> MultiPoly:
    """Parse ``src`` into an exact polynomial in ``2n`` variables."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _Parser(src, n).parse()


def parse_rational(src) -> Fraction:
    """A manifest point coordinate: int, or a string like ``"-3/4"``."""
    if isinstance(src, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(src, int):
        return Fraction(src)
    if isinstance(src, str):
        try:
            return Fraction(src.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {src!r}") from exc
    raise ValueError(f"not a rational: {src!r}")
