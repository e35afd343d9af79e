"""Domain-independent element model.

Every backend is a frozen :class:`Domain` instance that knows how to
normalize, multiply, divide and enumerate divisors of its raw payloads.
:class:`Element` pairs a payload with the domain it lives in, so elements
from different backends never compare equal and mixing them is an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Hashable


class DomainError(ValueError):
    """Raised for operations that make no sense in the given domain."""


class BackendMismatch(DomainError):
    pass


@dataclass(frozen=True)
class Element:
    domain: "Domain"
    value: Hashable

    def __post_init__(self):
        if self.domain.is_zero(self.value):
            raise DomainError("zero is not an element of D*")

    # ordering is the canonical order used everywhere output is sorted
    def sort_key(self):
        return self.domain.sort_key(self.value)

    def __lt__(self, other: "Element") -> bool:
        _same_domain(self, other)
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Element") -> bool:
        _same_domain(self, other)
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: "Element") -> bool:
        return other < self

    def __ge__(self, other: "Element") -> bool:
        return other <= self

    def __mul__(self, other: "Element") -> "Element":
        _same_domain(self, other)
        return Element(self.domain, self.domain.mul(self.value, other.value))

    def __str__(self) -> str:
        return self.domain.format(self.value)

    def __repr__(self) -> str:
        return f"Element({self.domain.name}, {self.domain.format(self.value)!r})"

    @property
    def is_unit(self) -> bool:
        return self.domain.is_unit(self.value)


# Units are ordinary elements that pass the backend unit test.
UnitValue = Element


def _same_domain(a: Element, b: Element) -> None:
    if a.domain != b.domain:
        raise BackendMismatch(f"elements from {a.domain.name} and {b.domain.name}")


class Domain:
    """Interface implemented by every backend.

    Payload-level methods take and return raw values; the module-level
    functions below wrap them for :class:`Element`.
    """

    name: str = "abstract"

    def is_zero(self, v: Any) -> bool:
        raise NotImplementedError

    def is_unit(self, v: Any) -> bool:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def mul(self, v: Any, w: Any) -> Any:
        raise NotImplementedError

    def normalize(self, v: Any) -> tuple[Any, Any]:
        """Return ``(canonical, unit)`` with ``v == unit * canonical``."""
        raise NotImplementedError

    def divide(self, v: Any, w: Any) -> Any | None:
        """Exact quotient ``v / w`` inside the ring, or None."""
        raise NotImplementedError

    def divisor_values(self, v: Any) -> list[Any]:
        """Canonical non-unit divisors of canonical non-unit ``v``."""
        raise NotImplementedError

    def measure_value(self, v: Any) -> int:
        raise NotImplementedError

    def sort_key(self, v: Any) -> tuple:
        raise NotImplementedError

    def format(self, v: Any) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Element:
        raise NotImplementedError

    def sample_units(self) -> list[Any]:
        """A finite list of units, used by associate-preservation checks."""
        raise NotImplementedError

    # element-level conveniences

    def element(self, v: Any) -> Element:
        return Element(self, v)

    def unit(self) -> Element:
        return Element(self, self.one())


def canonicalize(x: Element) -> tuple[Element, UnitValue]:
    """Split ``x`` into its canonical associate and a unit: ``x = u * c``."""
    c, u = x.domain.normalize(x.value)
    return Element(x.domain, c), Element(x.domain, u)


def canonical(x: Element) -> Element:
    return canonicalize(x)[0]


def is_canonical(x: Element) -> bool:
    return canonical(x) == x


def exact_divide(x: Element, d: Element) -> Element | None:
    """Quotient ``q`` with ``d * q == x``, or None if ``d`` does not divide ``x``."""
    _same_domain(x, d)
    q = x.domain.divide(x.value, d.value)
    return None if q is None else Element(x.domain, q)


def divisors(x: Element) -> list[Element]:
    """All canonical non-unit divisors of ``x`` (including ``x``'s own
    representative), sorted in canonical order."""
    if x.is_unit:
        raise DomainError("divisors() needs a non-unit")
    c = canonical(x)
    return list(_divisors(x.domain, c.value))


@lru_cache(maxsize=None)
def _divisors(domain: Domain, v: Any) -> tuple[Element, ...]:
    found = {Element(domain, d) for d in domain.divisor_values(v)}
    return tuple(sorted(found))


def measure(x: Element) -> int:
    return x.domain.measure_value(x.value)


def product(factors, domain: Domain) -> Element:
    acc = domain.one()
    for f in factors:
        acc = domain.mul(acc, f.value)
    return Element(domain, acc)


def log2_floor(n: int) -> int:
    return n.bit_length() - 1
