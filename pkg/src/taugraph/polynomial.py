"""Dense univariate polynomials over Q.

A polynomial is a tuple of :class:`~fractions.Fraction` coefficients,
lowest degree first, with no trailing zeros. The zero polynomial is ``()``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from math import gcd, isqrt, lcm

Poly = tuple  # tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def poly(coeffs) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def monomial(k: int, c=1) -> Poly:
    return poly([0] * k + [c])


def degree(p: Poly) -> int:
    if not p:
        raise ValueError("degree of the zero polynomial")
    return len(p) - 1


def coeff(p: Poly, k: int) -> Fraction:
    return p[k] if k < len(p) else Fraction(0)


def leading(p: Poly) -> Fraction:
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    return poly(a + b for a, b in zip_longest(p, q, fillvalue=Fraction(0)))


def neg(p: Poly) -> Poly:
    return tuple(-a for a in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    return poly(a * c for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def power(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative exponent")
    out = ONE
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    lead = q[-1]
    for i in range(len(p) - 1 - dq, -1, -1):
        c = rem[i + dq] / lead
        quot[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    return poly(quot), poly(rem[:dq])


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def monic(p: Poly) -> tuple[Poly, Fraction]:
    lc = leading(p)
    return scale(p, 1 / lc), lc


def integer_coefficients(p: Poly) -> list[int]:
    """Scale ``p`` to a primitive integer coefficient list (sign kept)."""
    den = lcm(*(a.denominator for a in p)) if p else 1
    ints = [int(a * den) for a in p]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints] if g else ints


def _positive_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of ``p`` (rational root theorem), ascending."""
    if degree(p) < 1:
        return []
    k = 0
    while p[k] == 0:
        k += 1
    roots = {Fraction(0)} if k else set()
    ints = integer_coefficients(p[k:])
    if len(ints) > 1:
        for num in _positive_divisors(ints[0]):
            for den in _positive_divisors(ints[-1]):
                for r in (Fraction(num, den), Fraction(-num, den)):
                    if evaluate(p, r) == 0:
                        roots.add(r)
    return sorted(roots)


def format_poly(p: Poly, var: str = "x") -> str:
    """Render highest degree first, e.g. ``x^3 - x^2`` or ``1/2*x^2 + 3``."""
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
