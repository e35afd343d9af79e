"""Symmetric relations on non-zero non-units, and sampled property checks.

A relation only ever sees non-zero non-units. Built-ins are invariant under
multiplication by units, so callers may pass canonical representatives or
any associate of them.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field
from itertools import product as cartesian
from math import gcd
from typing import Callable, Iterable

from . import polynomial as P
from .algebra import BackendMismatch, DomainError, Element, canonical, divisors, exact_divide, measure

PROPERTIES = (
    "symmetric",
    "reflexive",
    "associate_preserving",
    "multiplicative",
    "divisive",
    "combinable",
    "refinable",
)


def backend_kind(x: Element) -> str:
    return x.domain.name.partition(":")[0]


@dataclass(frozen=True)
class TauRelation:
    name: str
    predicate: Callable[[Element, Element], bool] = field(compare=False)
    params: str | None = None
    declared: frozenset = frozenset()
    backends: frozenset | None = None  # None: any backend

    @property
    def label(self) -> str:
        return self.name if self.params is None else f"{self.name}:{self.params}"

    def supports(self, kind: str) -> bool:
        return self.backends is None or kind in self.backends

    def check_domain(self, domain) -> None:
        kind = domain.name.partition(":")[0]
        if not self.supports(kind):
            raise BackendMismatch(f"relation {self.label!r} is not defined on backend {domain.name}")

    def holds(self, a: Element, b: Element) -> bool:
        return holds(self, a, b)


def holds(tau: TauRelation, a: Element, b: Element) -> bool:
    if a.domain != b.domain:
        raise BackendMismatch(f"elements from {a.domain.name} and {b.domain.name}")
    if not tau.supports(backend_kind(a)):
        raise BackendMismatch(f"relation {tau.label!r} is not defined on backend {a.domain.name}")
    if a.is_unit or b.is_unit:
        raise DomainError("relations are only evaluated on non-units")
    return bool(tau.predicate(a, b))


# built-in predicates


def _full(a, b):
    return True


def _empty(a, b):
    return False


def _same_degree(a, b):
    return P.degree(a.value) == P.degree(b.value)


def _coprime(a, b):
    return gcd(a.value, b.value) == 1


def _parity(a, b):
    return abs(a.value) % 2 == abs(b.value) % 2


def is_irreducible(x: Element) -> bool:
    """Irreducible in the usual sense: no non-unit proper divisor."""
    return divisors(x) == [canonical(x)]


_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod, ast.Pow: operator.pow,
}
_CMPOPS = {
    ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt,
    ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge,
}
SUBSET_NAMES = ("measure", "degree", "prime")


def compile_subset(expr: str) -> Callable[[Element], bool]:
    """Compile a membership test such as ``prime or measure % 2 == 1``.

    Names: ``measure`` (multiplicative size), ``degree`` (polynomials only),
    ``prime`` (irreducible in the domain). Operators: arithmetic
    ``+ - * // % **``, comparisons, ``and``/``or``/``not``, integer literals,
    ``True``/``False``.
    """
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"bad subset expression {expr!r}: {exc.msg}") from None

    def check(node):
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.BoolOp):
            for v in node.values:
                check(v)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.Not, ast.USub)):
            check(node.operand)
        elif isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.Compare) and all(type(o) in _CMPOPS for o in node.ops):
            check(node.left)
            for c in node.comparators:
                check(c)
        elif isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
            pass
        elif isinstance(node, ast.Name) and node.id in SUBSET_NAMES:
            pass
        else:
            raise DomainError(f"unsupported construct in subset expression {expr!r}")

    check(tree)

    def ev(node, env):
        if isinstance(node, ast.Expression):
            return ev(node.body, env)
        if isinstance(node, ast.BoolOp):
            vals = (ev(v, env) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand, env)
            return (not v) if isinstance(node.op, ast.Not) else -v
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](ev(node.left, env), ev(node.right, env))
        if isinstance(node, ast.Compare):
            left = ev(node.left, env)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp, env)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.Constant):
            return node.value
        return env(node.id)

    def member(x: Element) -> bool:
        def env(name):
            if name == "measure":
                return measure(x)
            if name == "degree":
                if backend_kind(x) != "gapped-poly":
                    raise BackendMismatch("degree is only defined for polynomials")
                return P.degree(x.value)
            return is_irreducible(x)

        return bool(ev(tree, env))

    return member


def builtin(name: str, params: str | None = None, domain=None) -> TauRelation:
    key = name.replace("-", "_")
    if key == "full":
        tau = TauRelation("full", _full, None,
                          frozenset({"symmetric", "reflexive", "associate_preserving", "multiplicative",
                                     "divisive", "refinable", "combinable"}))
    elif key == "empty":
        tau = TauRelation("empty", _empty, None,
                          frozenset({"symmetric", "associate_preserving", "multiplicative", "divisive",
                                     "refinable", "combinable"}))
    elif key == "subset":
        if not params:
            raise DomainError("subset relation needs a membership expression, e.g. subset:prime")
        member = compile_subset(params)
        tau = TauRelation("subset", lambda a, b: member(a) and member(b), params,
                          frozenset({"symmetric"}))
    elif key == "same_degree":
        tau = TauRelation("same_degree", _same_degree, None,
                          frozenset({"symmetric", "associate_preserving", "reflexive"}),
                          frozenset({"gapped-poly"}))
    elif key == "coprime":
        tau = TauRelation("coprime", _coprime, None,
                          frozenset({"symmetric", "associate_preserving", "multiplicative", "divisive"}),
                          frozenset({"int"}))
    elif key == "parity":
        tau = TauRelation("parity", _parity, None,
                          frozenset({"symmetric", "associate_preserving", "reflexive", "multiplicative"}),
                          frozenset({"int"}))
    else:
        raise DomainError(f"unknown relation {name!r}")
    if key != "subset" and params:
        raise DomainError(f"relation {tau.name!r} takes no parameters")
    if domain is not None:
        tau.check_domain(domain)
    return tau


def from_string(text: str, domain=None) -> TauRelation:
    """Parse ``name[:params]`` as given on the command line."""
    name, sep, params = text.partition(":")
    return builtin(name.strip(), params if sep else None, domain)


# sampled property checks


@dataclass(frozen=True)
class PropertyCheckReport:
    property: str
    relation: str
    verdict: str  # "no-counterexample-at-bound" | "counterexample"
    witness: tuple | None
    sample: str
    checked: int

    @property
    def ok(self) -> bool:
        return self.witness is None

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "relation": self.relation,
            "verdict": self.verdict,
            "witness": None if self.witness is None else [_render(w) for w in self.witness],
            "sample": self.sample,
            "checked": self.checked,
        }


def _render(w):
    if isinstance(w, (list, tuple)):
        return [_render(v) for v in w]
    return w if isinstance(w, (int, str)) or w is None else str(w)


def describe_sample(sample) -> str:
    sample = list(sample)
    if not sample:
        return "empty sample"
    return f"{len(sample)} elements of {sample[0].domain.name}, {sample[0]} .. {sample[-1]}"


def _violations(tau, prop, sample, engine):
    h = tau.holds
    if prop == "symmetric":
        for a, b in cartesian(sample, repeat=2):
            yield (a, b)
    elif prop == "reflexive":
        for a in sample:
            yield (a,)
    elif prop == "associate_preserving":
        units = [u for u in sample[0].domain.sample_units()] if sample else []
        for a, b in cartesian(sample, repeat=2):
            for u in units:
                yield (a, b, Element(a.domain, u))
    elif prop == "multiplicative":
        for a in sample:
            related = [b for b in sample if h(a, b)]
            for b, c in cartesian(related, repeat=2):
                yield (a, b, c)
    elif prop == "divisive":
        for a, b in cartesian(sample, repeat=2):
            if h(a, b):
                for d in divisors(b):
                    yield (a, b, d)
    elif prop == "combinable":
        for x in sample:
            for f in engine.factorizations(x).nontrivial:
                n = len(f.factors)
                for i in range(n):
                    for j in range(i + 1, n):
                        yield (x, f, i, j)
    elif prop == "refinable":
        for x in sample:
            for f in engine.factorizations(x).nontrivial:
                for i, a in enumerate(f.factors):
                    if i and a == f.factors[i - 1]:
                        continue
                    for sub in engine.factorizations(a).nontrivial:
                        yield (x, f, i, sub)
    else:
        raise DomainError(f"unknown property {prop!r}; choose from {PROPERTIES}")


def violates(tau: TauRelation, prop: str, witness: tuple) -> bool:
    """Replay a candidate witness: True iff it breaks ``prop``."""
    h = tau.holds
    if prop == "symmetric":
        a, b = witness
        return h(a, b) != h(b, a)
    if prop == "reflexive":
        (a,) = witness
        return not h(a, a)
    if prop == "associate_preserving":
        a, b, u = witness
        return h(a, b) != h(a, u * b)
    if prop == "multiplicative":
        a, b, c = witness
        return h(a, b) and h(a, c) and not h(a, b * c)
    if prop == "divisive":
        a, b, d = witness
        return h(a, b) and exact_divide(b, d) is not None and not d.is_unit and not h(a, d)
    from .factorization import combine, is_tau_factorization, refine

    if prop == "combinable":
        x, f, i, j = witness
        return is_tau_factorization(f, tau) and not is_tau_factorization(combine(f, i, j), tau)
    if prop == "refinable":
        x, f, i, sub = witness
        subs = [None] * len(f.factors)
        subs[i] = sub
        return (is_tau_factorization(f, tau) and is_tau_factorization(sub, tau)
                and not is_tau_factorization(refine(f, subs), tau))
    raise DomainError(f"unknown property {prop!r}; choose from {PROPERTIES}")


def check_property(tau: TauRelation, prop: str, sample: Iterable[Element], engine=None) -> PropertyCheckReport:
    """Search ``sample`` for a counterexample to ``prop``.

    A clean run is reported as "no-counterexample-at-bound", never as a proof.
    """
    prop = prop.replace("-", "_")
    sample = sorted(set(sample))
    if prop in ("combinable", "refinable") and engine is None:
        from .factorization import get_engine

        engine = get_engine(tau)
    checked = 0
    for w in _violations(tau, prop, sample, engine):
        checked += 1
        if violates(tau, prop, w):
            return PropertyCheckReport(prop, tau.label, "counterexample", w, describe_sample(sample), checked)
    return PropertyCheckReport(prop, tau.label, "no-counterexample-at-bound", None, describe_sample(sample), checked)
