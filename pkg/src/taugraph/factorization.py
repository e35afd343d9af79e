"""Enumeration of tau-factorizations up to rearrangement and associates.

A factorization is stored as a unit plus a sorted tuple of canonical
non-unit factors, so two factorizations are equal exactly when they agree up
to rearrangement and associates. Enumeration is a depth-first search over
canonical divisors with non-decreasing factors, which yields every multiset
once; the tau condition is checked incrementally as each factor is added.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import DomainError, Element, canonical, canonicalize, divisors, exact_divide, measure, product
from .tau import TauRelation


class CapExceeded(RuntimeError):
    """A configured resource cap was hit; results would be incomplete."""


@dataclass(frozen=True)
class Caps:
    max_factorizations: int = 200_000
    max_depth: int = 256

    def __post_init__(self):
        if self.max_factorizations < 1 or self.max_depth < 1:
            raise ValueError("caps must be positive")


@dataclass(frozen=True)
class Factorization:
    target: Element
    unit: Element
    factors: tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def trivial(self) -> bool:
        return len(self.factors) == 1

    def __str__(self) -> str:
        parts = [f"({a})" if _needs_parens(a) else str(a) for a in self.factors]
        u = str(self.unit)
        head = "" if u == "1" else f"{u} * "
        return f"{self.target} = {head}{' * '.join(parts)}"

    def to_dict(self) -> dict:
        return {"unit": str(self.unit), "factors": [str(a) for a in self.factors]}


def _needs_parens(a: Element) -> bool:
    s = str(a)
    return any(c in s[1:] for c in "+- ")


@dataclass(frozen=True)
class FactorizationSet:
    target: Element
    relation: str
    include_trivial: bool
    factorizations: tuple[Factorization, ...]
    atomic: bool = False
    exhaustive: bool = True

    def __iter__(self) -> Iterator[Factorization]:
        return iter(self.factorizations)

    def __len__(self) -> int:
        return len(self.factorizations)

    @property
    def nontrivial(self) -> tuple[Factorization, ...]:
        return tuple(f for f in self.factorizations if not f.trivial)


def make_factorization(target: Element, factors: Sequence[Element]) -> Factorization:
    """Build the factorization of ``target`` with the given non-unit factors,
    solving for the unit. Raises DomainError if the product is off by more
    than a unit."""
    factors = tuple(sorted(canonical(a) for a in factors))
    if not factors:
        raise DomainError("a factorization needs at least one factor")
    unit = exact_divide(target, product(factors, target.domain))
    if unit is None or not unit.is_unit:
        raise DomainError("factors do not multiply to the target up to a unit")
    return Factorization(target, unit, factors)


def is_tau_factorization(candidate: Factorization, tau: TauRelation) -> bool:
    f = candidate
    if not f.factors or not f.unit.is_unit or any(a.is_unit for a in f.factors):
        return False
    if f.unit * product(f.factors, f.target.domain) != f.target:
        return False
    n = len(f.factors)
    return all(tau.holds(f.factors[i], f.factors[j]) for i in range(n) for j in range(i + 1, n))


def refine(f: Factorization, subfactorizations: Sequence[Factorization | None]) -> Factorization:
    """Replace each factor a_i by the factors of its given factorization
    (None keeps a_i), folding all units into the leading unit. The result
    need not be a tau-factorization."""
    if len(subfactorizations) != len(f.factors):
        raise ValueError("need one (possibly None) subfactorization per factor")
    unit = f.unit
    out: list[Element] = []
    for a, sub in zip(f.factors, subfactorizations):
        if sub is None:
            out.append(a)
            continue
        if sub.target != a:
            raise ValueError(f"subfactorization of {sub.target} given for factor {a}")
        unit = unit * sub.unit
        out.extend(sub.factors)
    return Factorization(f.target, unit, tuple(sorted(out)))


def combine(f: Factorization, i: int, j: int) -> Factorization:
    """Merge factors ``i`` and ``j`` into their product."""
    if i == j:
        raise ValueError("need two distinct positions")
    merged, u = canonicalize(f.factors[i] * f.factors[j])
    rest = [a for k, a in enumerate(f.factors) if k not in (i, j)]
    return Factorization(f.target, f.unit * u, tuple(sorted(rest + [merged])))


class Engine:
    """Memoized tau-factorization queries for one relation.

    Caches are keyed by canonical element; inserts are idempotent, so
    concurrent callers at worst duplicate work.
    """

    def __init__(self, tau: TauRelation, caps: Caps = Caps()):
        self.tau = tau
        self.caps = caps
        self._classes: dict[Element, tuple[tuple[Element, ...], ...]] = {}
        self._atom: dict[Element, bool] = {}
        self._lock = threading.Lock()

    # raw multisets

    def factor_multisets(self, x: Element) -> tuple[tuple[Element, ...], ...]:
        """All tau-factor multisets of canonical(x), trivial one first."""
        c = canonical(x)
        if c.is_unit:
            raise DomainError("units have no tau-factorizations")
        hit = self._classes.get(c)
        if hit is not None:
            return hit
        self.tau.check_domain(c.domain)
        found: list[tuple[Element, ...]] = []
        for ms in self._extend(c, None, (), 0):
            found.append(ms)
            if len(found) > self.caps.max_factorizations:
                raise CapExceeded(
                    f"more than {self.caps.max_factorizations} tau-factorizations of {c}")
        found.sort(key=lambda ms: (len(ms), [a.sort_key() for a in ms]))
        result = tuple(found)
        with self._lock:
            self._classes.setdefault(c, result)
        return result

    def _extend(self, rem: Element, lo: Element | None, chosen: tuple, depth: int):
        if depth > self.caps.max_depth:
            raise CapExceeded(f"factorization depth above {self.caps.max_depth}")
        h = self.tau.holds
        for d in divisors(rem):
            if lo is not None and d < lo:
                continue
            if not all(h(c, d) for c in chosen):
                continue
            if d == rem:
                yield chosen + (d,)
                continue
            q = canonical(exact_divide(rem, d))
            # every later factor is >= d, so their product can't be smaller
            if measure(q) < measure(d):
                continue
            yield from self._extend(q, d, chosen + (d,), depth + 1)

    # public queries

    def factorizations(self, x: Element, include_trivial: bool = True) -> FactorizationSet:
        sets = self.factor_multisets(x)
        out = tuple(_attach_unit(x, ms) for ms in sets if include_trivial or len(ms) > 1)
        return FactorizationSet(x, self.tau.label, include_trivial, out)

    def is_atom(self, x: Element) -> bool:
        c = canonical(x)
        hit = self._atom.get(c)
        if hit is None:
            hit = all(len(ms) == 1 for ms in self.factor_multisets(c))
            self._atom[c] = hit
        return hit

    def atomic_factorizations(self, x: Element) -> FactorizationSet:
        out = tuple(
            _attach_unit(x, ms)
            for ms in self.factor_multisets(x)
            if all(self.is_atom(a) for a in ms)
        )
        return FactorizationSet(x, self.tau.label, self.is_atom(x), out, atomic=True)

    def tau_divisors(self, x: Element) -> list[Element]:
        found = set()
        for ms in self.factor_multisets(x):
            found.update(ms)
        return sorted(found)

    def tau_irreducible_divisors(self, x: Element) -> list[Element]:
        return [a for a in self.tau_divisors(x) if self.is_atom(a)]


def _attach_unit(x: Element, ms: tuple[Element, ...]) -> Factorization:
    unit = exact_divide(x, product(ms, x.domain))
    return Factorization(x, unit, ms)


_engines: dict[tuple[TauRelation, Caps], Engine] = {}
_engines_lock = threading.Lock()


def get_engine(tau: TauRelation, caps: Caps = Caps()) -> Engine:
    """Shared engine (and caches) for ``tau`` under ``caps``."""
    key = (tau, caps)
    with _engines_lock:
        eng = _engines.get(key)
        if eng is None:
            eng = _engines[key] = Engine(tau, caps)
    return eng


def enumerate_tau_factorizations(x: Element, tau: TauRelation, include_trivial: bool = True,
                                 engine: Engine | None = None) -> FactorizationSet:
    return (engine or get_engine(tau)).factorizations(x, include_trivial)


def is_tau_atom(x: Element, tau: TauRelation, engine: Engine | None = None) -> bool:
    return (engine or get_engine(tau)).is_atom(x)


def enumerate_tau_atomic_factorizations(x: Element, tau: TauRelation,
                                        engine: Engine | None = None) -> FactorizationSet:
    return (engine or get_engine(tau)).atomic_factorizations(x)


def tau_divisors(x: Element, tau: TauRelation, engine: Engine | None = None) -> list[Element]:
    return (engine or get_engine(tau)).tau_divisors(x)


def tau_irreducible_divisors(x: Element, tau: TauRelation, engine: Engine | None = None) -> list[Element]:
    return (engine or get_engine(tau)).tau_irreducible_divisors(x)
