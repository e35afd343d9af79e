from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from ..algebra import Domain, DomainError, Element
from .parser import ParseError, parse_ast, to_poly


def positive_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


@dataclass(frozen=True)
class IntegerDomain(Domain):
    """The integers; canonical associates are the positive representatives."""

    name: str = "int"

    def is_zero(self, v):
        return v == 0

    def is_unit(self, v):
        return v in (1, -1)

    def one(self):
        return 1

    def mul(self, v, w):
        return v * w

    def normalize(self, v):
        if v == 0:
            raise DomainError("zero has no associate class")
        return (v, 1) if v > 0 else (-v, -1)

    def divide(self, v, w):
        if w == 0:
            raise DomainError("division by zero")
        q, r = divmod(v, w)
        return q if r == 0 else None

    def divisor_values(self, v):
        return [d for d in positive_divisors(v) if d > 1]

    def measure_value(self, v):
        if v == 0:
            raise DomainError("zero has no measure")
        return abs(v)

    def sort_key(self, v):
        return (abs(v), v)

    def format(self, v):
        return str(v)

    def parse(self, text: str) -> Element:
        p = to_poly(parse_ast(text))
        if len(p) != 1 or p[0].denominator != 1:
            raise ParseError(f"not a nonzero integer: {text!r}")
        return Element(self, int(p[0]))

    def sample_units(self):
        return [1, -1]

    def sample(self, lo: int, hi: int) -> list[Element]:
        """Canonical non-units ``lo..hi`` inclusive."""
        return [Element(self, n) for n in range(max(lo, 2), hi + 1)]


INTEGERS = IntegerDomain()
