from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from ..algebra import Domain, DomainError, Element
from .integers import positive_divisors
from .parser import ParseError, parse_ast, to_poly

ALLOWED_RADICANDS = (-1, -2, -5, -6, -10)


@dataclass(frozen=True)
class QuadraticDomain(Domain):
    """Z[sqrt(d)] for a squarefree negative d; payloads are pairs (a, b)
    meaning a + b*sqrt(d)."""

    d: int = -5

    def __post_init__(self):
        if self.d not in ALLOWED_RADICANDS:
            raise DomainError(f"radicand {self.d} not in {ALLOWED_RADICANDS}")

    @property
    def name(self) -> str:
        return f"quad:{self.d}"

    def norm(self, v) -> int:
        a, b = v
        return a * a - self.d * b * b

    def is_zero(self, v):
        return v == (0, 0)

    def is_unit(self, v):
        return self.norm(v) == 1

    def one(self):
        return (1, 0)

    def mul(self, v, w):
        a, b = v
        c, e = w
        return (a * c + self.d * b * e, a * e + b * c)

    def units(self):
        if self.d == -1:
            return [(1, 0), (0, 1), (-1, 0), (0, -1)]
        return [(1, 0), (-1, 0)]

    def normalize(self, v):
        if v == (0, 0):
            raise DomainError("zero has no associate class")
        a, b = v
        if self.d == -1:
            # exactly one of v, -iv, -v, iv has a > 0, b >= 0
            for u in self.units():
                c = self.mul(v, _conj_unit(u))
                if c[0] > 0 and c[1] >= 0:
                    return c, u
            raise AssertionError("no canonical rotation found")
        if a > 0 or (a == 0 and b > 0):
            return v, (1, 0)
        return (-a, -b), (-1, 0)

    def divide(self, v, w):
        if w == (0, 0):
            raise DomainError("division by zero")
        n = self.norm(w)
        a, b = self.mul(v, (w[0], -w[1]))
        if a % n or b % n:
            return None
        return (a // n, b // n)

    def elements_of_norm(self, m: int) -> list[tuple[int, int]]:
        """Canonical elements with norm exactly ``m``."""
        out = set()
        k = -self.d
        for b in range(isqrt(m // k) + 1):
            r = m - k * b * b
            a = isqrt(r)
            if a * a == r:
                for sa in (a, -a):
                    for sb in (b, -b):
                        out.add(self.normalize((sa, sb))[0])
        return sorted(out, key=self.sort_key)

    def divisor_values(self, v):
        out = []
        for m in positive_divisors(self.norm(v)):
            if m == 1:
                continue
            for w in self.elements_of_norm(m):
                if self.divide(v, w) is not None:
                    out.append(w)
        return out

    def measure_value(self, v):
        if v == (0, 0):
            raise DomainError("zero has no measure")
        return self.norm(v)

    def sort_key(self, v):
        return (self.norm(v), abs(v[1]), v[0], v[1])

    def format(self, v):
        a, b = v
        sym = "i" if self.d == -1 else f"sqrt({self.d})"
        if b == 0:
            return str(a)
        mono = sym if abs(b) == 1 else f"{abs(b)}*{sym}"
        if a == 0:
            return mono if b > 0 else f"-{mono}"
        return f"{a}{'+' if b > 0 else '-'}{mono}"

    def parse(self, text: str) -> Element:
        symbols = {f"sqrt({self.d})"}
        if self.d == -1:
            symbols.add("i")
        p = to_poly(parse_ast(text, symbols))
        # reduce modulo s^2 = d
        a = b = 0
        for k, c in enumerate(p):
            if c.denominator != 1:
                raise ParseError(f"non-integer coefficient in {text!r}")
            term = int(c) * self.d ** (k // 2)
            if k % 2:
                b += term
            else:
                a += term
        if (a, b) == (0, 0):
            raise ParseError("zero is not an element of D*")
        return Element(self, (a, b))

    def sample_units(self):
        return self.units()

    def sample(self, norm_bound: int) -> list[Element]:
        """Canonical non-units with norm in ``2..norm_bound``."""
        out = []
        for m in range(2, norm_bound + 1):
            out.extend(Element(self, v) for v in self.elements_of_norm(m))
        return out


def _conj_unit(u):
    # inverse of a unit of Z[i] (complex conjugate)
    return (u[0], -u[1])
