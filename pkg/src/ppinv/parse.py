"""Polynomial text parser.

Grammar (whitespace-insensitive)::

    poly  := [sign] term (sign term)*
    term  := coeff '*' mono | mono | coeff
    mono  := 'x' ['^' digits]
    coeff := digits | '[' digits (',' digits)* ']' | 'g' ['^' ['-'] digits]
    sign  := '+' | '-' | '−'

Coefficients are element literals: a decimal index, coordinates low degree
first, or a power of the primitive element.
"""

from __future__ import annotations

from .gf import FieldCtx, FieldError
from .polyring import Poly, from_terms

MAX_EXPONENT_DIGITS = 40


class PolyParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str, ctx: FieldCtx):
        self.src = text
        # keep original positions for error messages
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.chars[self.i][1] if self.i < len(self.chars) else ""

    def pos(self):
        return self.chars[self.i][0] if self.i < len(self.chars) else len(self.src)

    def fail(self, msg):
        raise PolyParseError(msg, self.src, self.pos())

    def take(self, ch):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.i += 1

    def digits(self, what="digits"):
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if start == self.i:
            self.fail(f"expected {what}")
        return "".join(ch for _, ch in self.chars[start:self.i])

    def exponent(self):
        d = self.digits("exponent")
        if len(d) > MAX_EXPONENT_DIGITS:
            self.fail("exponent overflow")
        return int(d)

    def coeff(self) -> int:
        ctx = self.ctx
        at = self.pos()
        ch = self.peek()
        try:
            if ch.isdigit():
                return int(ctx(int(self.digits())))
            if ch == "[":
                self.take("[")
                parts = [int(self.digits())]
                while self.peek() == ",":
                    self.take(",")
                    parts.append(int(self.digits()))
                self.take("]")
                return int(ctx(parts))
            if ch == "g":
                self.take("g")
                k = 1
                if self.peek() == "^":
                    self.take("^")
                    neg = False
                    if self.peek() in "-−" and self.peek():
                        self.i += 1
                        neg = True
                    k = self.exponent()
                    k = -k if neg else k
                return ctx.pow(ctx.xi.index, k)
        except FieldError as exc:
            raise PolyParseError(f"coefficient out of field ({exc})", self.src, at) from None
        self.fail("expected a term")

    def mono(self) -> int:
        self.take("x")
        if self.peek() == "^":
            self.take("^")
            return self.exponent()
        return 1

    def term(self):
        if self.peek() == "x":
            return 1, self.mono()
        c = self.coeff()
        if self.peek() == "*":
            self.take("*")
            return c, self.mono()
        return c, 0

    def parse(self):
        terms = []
        first = True
        while True:
            negate = False
            ch = self.peek()
            if ch in ("+", "-", "−") and ch:
                self.i += 1
                negate = ch != "+"
            elif not first:
                if ch == "":
                    break
                self.fail("expected '+' or '-'")
            if self.peek() == "":
                self.fail("expected a term")
            c, e = self.term()
            terms.append((e, self.ctx.neg(c) if negate else c))
            first = False
            if self.peek() == "":
                break
        return terms


def parse_poly(text: str, ctx: FieldCtx) -> Poly:
    """Parse ``text`` into a canonical Poly over ``ctx``."""
    if not text.strip():
        raise PolyParseError("empty polynomial", text, 0)
    return from_terms(ctx, _Parser(text, ctx).parse())
