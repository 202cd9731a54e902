"""Operator expressions on L2(0,1) and their text grammar.

Grammar (ASCII, case-insensitive, blanks ignored between tokens)::

    expr := term ('*' term)*
    term := 'j' | 'j^' FLOAT | 'cesaro' | 'mult(' FLOAT ')'

``*`` is composition and associates to the left, so the leftmost factor is
applied last: ``mult(1)*cesaro*j`` is ``Compose(Compose(Mult(1), Cesaro), J)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import InvalidArgument, ParseError


@dataclass(frozen=True)
class J:
    """Simple integration, kernel 1 on t <= s."""

    def __str__(self):
        return "j"


@dataclass(frozen=True)
class Jkappa:
    """Riemann-Liouville integral of order ``kappa``."""

    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise InvalidArgument(f"kappa must be positive, got {self.kappa!r}")

    def __str__(self):
        return f"j^{self.kappa:g}"


@dataclass(frozen=True)
class Cesaro:
    """Running average (1/s) * integral_0^s."""

    def __str__(self):
        return "cesaro"


@dataclass(frozen=True)
class Mult:
    """Multiplication by t**eta."""

    eta: float

    def __post_init__(self):
        if not self.eta >= 0:
            raise InvalidArgument(f"eta must be non-negative, got {self.eta!r}")

    def __str__(self):
        return f"mult({self.eta:g})"


@dataclass(frozen=True)
class Compose:
    """``outer`` applied after ``inner``."""

    outer: "OperatorExpr"
    inner: "OperatorExpr"

    def __str__(self):
        return f"{self.outer}*{self.inner}"


OperatorExpr = Union[J, Jkappa, Cesaro, Mult, Compose]
LEAF_TYPES = (J, Jkappa, Cesaro, Mult)

#: The composite operator C o J studied throughout the package.
A = Compose(Cesaro(), J())


def is_cesaro_after_j(expr):
    return isinstance(expr, Compose) and isinstance(expr.outer, Cesaro) and isinstance(expr.inner, J)


def leaves(expr):
    """Leaves of ``expr`` from outermost to innermost."""
    if isinstance(expr, Compose):
        return leaves(expr.outer) + leaves(expr.inner)
    return [expr]


_FLOAT = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


class _Parser:
    def __init__(self, text):
        self.text = text.lower()
        self.pos = 0

    def skip_blanks(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def fail(self, message):
        # input is ASCII, so character and byte offsets coincide
        raise ParseError(message, self.pos)

    def expect(self, literal):
        if not self.text.startswith(literal, self.pos):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def number(self):
        self.skip_blanks()
        m = _FLOAT.match(self.text, self.pos)
        if m is None:
            self.fail("expected a number")
        self.pos = m.end()
        return float(m.group())

    def term(self):
        self.skip_blanks()
        start = self.pos
        if self.text.startswith("cesaro", self.pos):
            self.pos += len("cesaro")
            return Cesaro()
        if self.text.startswith("mult", self.pos):
            self.pos += len("mult")
            self.skip_blanks()
            self.expect("(")
            value_at = self.pos
            eta = self.number()
            self.skip_blanks()
            self.expect(")")
            if eta < 0:
                self.pos = value_at
                self.fail(f"eta must be non-negative, got {eta:g}")
            return Mult(eta)
        if self.text.startswith("j", self.pos):
            self.pos += 1
            self.skip_blanks()
            if self.text.startswith("^", self.pos):
                self.pos += 1
                value_at = self.pos
                kappa = self.number()
                if kappa <= 0:
                    self.pos = value_at
                    self.fail(f"kappa must be positive, got {kappa:g}")
                return Jkappa(kappa)
            return J()
        self.pos = start
        self.fail("expected 'j', 'j^', 'cesaro' or 'mult('")

    def expr(self):
        node = self.term()
        while True:
            self.skip_blanks()
            if self.pos >= len(self.text):
                return node
            if self.text[self.pos] != "*":
                self.fail("expected '*' or end of input")
            self.pos += 1
            node = Compose(node, self.term())


def parse_operator_expr(text):
    """Parse ``text`` into an operator expression.

    >>> parse_operator_expr("cesaro*j")
    Compose(outer=Cesaro(), inner=J())
    """
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        raise ParseError("non-ASCII character", len(text[:bad].encode("utf-8")))
    return _Parser(text).expr()
