"""The subring Q[x^2, x^3] of Q[x]: rational polynomials with no x^1 term.

Divisors are found through the ambient UFD Q[x]: every divisor of f in the
subring is, up to a rational scalar, a sub-multiset product of f's monic
irreducible factors in Q[x], kept when both it and its cofactor lie in the
subring. Factoring in Q[x] is deliberately weak (x-powers, rational roots,
certified quadratics and cubics); anything harder has to be declared by the
caller as a known irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

from .. import polynomial as P
from ..algebra import Domain, DomainError, Element
from .parser import ParseError, parse_ast, to_poly, top_level_factors


def in_subring(p: P.Poly) -> bool:
    """Membership in Q[x^2, x^3] = Q + x^2 Q[x]."""
    return P.coeff(p, 1) == 0


def _poly_key(p: P.Poly) -> tuple:
    return (len(p), tuple(reversed(p)))


def weak_factor(p: P.Poly, known=()) -> tuple[Fraction, list[tuple[P.Poly, int]], P.Poly]:
    """Factor ``p`` in Q[x] as far as cheap certificates allow.

    Returns ``(content, factors, residual)`` where the factors are monic
    irreducibles with multiplicities and ``residual`` is a monic leftover of
    degree 0 or >= 4 with no rational roots and no known factor.
    """
    if not p:
        raise DomainError("zero has no factorization")
    rest, content = P.monic(p)
    counts: dict[P.Poly, int] = {}

    def strip(f):
        nonlocal rest
        while P.degree(rest) >= P.degree(f):
            q, r = P.divmod_poly(rest, f)
            if r:
                break
            rest = q
            counts[f] = counts.get(f, 0) + 1

    for f in known:
        strip(f)
    for r in P.rational_roots(rest):
        strip(P.poly([-r, 1]))
    if P.degree(rest) in (2, 3):
        counts[rest] = counts.get(rest, 0) + 1
        rest = P.ONE
    factors = sorted(counts.items(), key=lambda fm: _poly_key(fm[0]))
    return content, factors, rest


@dataclass(frozen=True)
class GappedPolyInput:
    content: Fraction
    factors: tuple  # ((monic poly, multiplicity), ...)

    def expand(self) -> P.Poly:
        out = P.poly([self.content])
        for f, m in self.factors:
            out = P.mul(out, P.power(f, m))
        return out

    def known_factors(self) -> tuple:
        """Declared irreducibles that weak factoring could not rediscover."""
        return tuple(f for f, _ in self.factors if P.degree(f) >= 2)


def parse_poly(text: str, trust_factors: bool = False) -> GappedPolyInput:
    node = parse_ast(text, {"x"})
    const, parts = top_level_factors(node)
    factored = len(parts) > 1 or any(m > 1 for _, m in parts)
    content = Fraction(const)
    counts: dict[P.Poly, int] = {}
    for sub, mult in parts:
        p = to_poly(sub)
        if not p:
            raise ParseError("zero is not an element of D*")
        c, fs, residual = weak_factor(p)
        if P.degree(residual) >= 4:
            if not trust_factors:
                if factored:
                    raise ParseError(
                        f"degree-{P.degree(residual)} factor {P.format_poly(residual)} "
                        "cannot be certified irreducible; pass the trust-factors flag")
                raise ParseError(
                    f"cannot factor degree-{P.degree(residual)} part "
                    f"{P.format_poly(residual)}; supply factored form")
            fs = fs + [(residual, 1)]
        content *= c ** mult
        for f, m in fs:
            counts[f] = counts.get(f, 0) + m * mult
    factors = tuple(sorted(counts.items(), key=lambda fm: _poly_key(fm[0])))
    parsed = GappedPolyInput(content, factors)
    if not in_subring(parsed.expand()):
        raise ParseError(f"{text.strip()!r} is not a member of Q[x^2,x^3] (nonzero x^1 coefficient)")
    return parsed


@dataclass(frozen=True)
class GappedPolyDomain(Domain):
    """Payloads are coefficient tuples (lowest degree first) with zero x^1
    coefficient. ``known`` lists extra monic Q[x]-irreducibles of degree >= 2
    that divisor enumeration may use."""

    known: tuple = ()

    name = "gapped-poly"

    def is_zero(self, v):
        return not v

    def is_unit(self, v):
        return len(v) == 1

    def one(self):
        return P.ONE

    def mul(self, v, w):
        return P.mul(v, w)

    def normalize(self, v):
        if not v:
            raise DomainError("zero has no associate class")
        c, lc = P.monic(v)
        return c, P.poly([lc])

    def divide(self, v, w):
        if not w:
            raise DomainError("division by zero")
        q, r = P.divmod_poly(v, w)
        if r or not in_subring(q):
            return None
        return q

    def factor(self, v) -> tuple[Fraction, list[tuple[P.Poly, int]]]:
        return _ambient_factor(self.known, v)

    def divisor_values(self, v):
        _, fs = self.factor(v)
        out = []
        for exps in cartesian(*(range(m + 1) for _, m in fs)):
            if not any(exps):
                continue
            d = P.ONE
            for (f, _), e in zip(fs, exps):
                d = P.mul(d, P.power(f, e))
            if not in_subring(d):
                continue
            q, r = P.divmod_poly(v, d)
            assert not r
            if in_subring(q):
                out.append(d)
        return out

    def measure_value(self, v):
        if not v:
            raise DomainError("zero has no measure")
        return 2 ** P.degree(v)

    def sort_key(self, v):
        return (len(v), tuple(reversed(v)))

    def format(self, v):
        return P.format_poly(v)

    def parse(self, text: str, trust_factors: bool = False) -> Element:
        parsed = parse_poly(text, trust_factors)
        v = parsed.expand()
        try:
            self.factor(self.normalize(v)[0])
        except DomainError:
            raise DomainError(
                f"{text.strip()!r} has factors unknown to this domain; "
                "build the domain with gapped_domain_for()") from None
        return Element(self, v)

    def sample_units(self):
        return [P.poly([c]) for c in (1, -1, 2, Fraction(-1, 2), 3)]

    def coerce(self, p) -> Element:
        p = P.poly(p)
        if not in_subring(p):
            raise DomainError(f"{P.format_poly(p)} is not in Q[x^2,x^3]")
        return Element(self, p)


@lru_cache(maxsize=None)
def _ambient_factor(known, v):
    content, fs, residual = weak_factor(v, known)
    if P.degree(residual) > 0:
        raise DomainError(
            f"cannot factor {P.format_poly(residual)} over Q; supply factored form")
    return content, fs


GAPPED = GappedPolyDomain()


def gapped_domain_for(texts, trust_factors: bool = False) -> tuple[GappedPolyDomain, list[Element]]:
    """Parse several polynomial expressions into one shared domain."""
    parsed = [parse_poly(t, trust_factors) for t in texts]
    known = set()
    for p in parsed:
        known.update(p.known_factors())
    domain = GappedPolyDomain(tuple(sorted(known, key=_poly_key)))
    return domain, [Element(domain, p.expand()) for p in parsed]
