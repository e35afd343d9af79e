from __future__ import annotations

from dataclasses import dataclass

from ..algebra import Domain, DomainError
from .gapped import GAPPED, GappedPolyDomain, GappedPolyInput, gapped_domain_for, in_subring, parse_poly
from .integers import INTEGERS, IntegerDomain
from .parser import ParseError
from .quadratic import ALLOWED_RADICANDS, QuadraticDomain


@dataclass(frozen=True)
class DomainConfig:
    kind: str = "int"  # "int" | "quad" | "gapped-poly"
    d: int | None = None
    trust_factors: bool = False

    @classmethod
    def from_string(cls, text: str, trust_factors: bool = False) -> "DomainConfig":
        """Parse backend selectors like ``int``, ``quad:-5`` or ``gapped-poly``."""
        kind, _, param = text.strip().partition(":")
        if kind in ("int", "integer", "Z"):
            return cls("int", None, trust_factors)
        if kind in ("quad", "quadratic"):
            try:
                d = int(param)
            except ValueError:
                raise DomainError(f"quadratic backend needs a radicand, e.g. quad:-5 (got {text!r})")
            if d not in ALLOWED_RADICANDS:
                raise DomainError(f"radicand {d} not in {ALLOWED_RADICANDS}")
            return cls("quad", d, trust_factors)
        if kind in ("gapped-poly", "gapped", "poly"):
            return cls("gapped-poly", None, trust_factors)
        raise DomainError(f"unknown backend {text!r}")

    def build(self) -> Domain:
        if self.kind == "int":
            return INTEGERS
        if self.kind == "quad":
            return QuadraticDomain(self.d)
        return GAPPED


__all__ = [
    "ALLOWED_RADICANDS", "DomainConfig", "GAPPED", "GappedPolyDomain", "GappedPolyInput",
    "INTEGERS", "IntegerDomain", "ParseError", "QuadraticDomain", "gapped_domain_for",
    "in_subring", "parse_poly",
]
