"""Acceptance criteria, one test each, with wall-clock limits.

Every test starts from cold caches, records a PASS/FAIL line (shown in the
pytest terminal summary) and fails if it overruns its limit.
"""

from __future__ import annotations

import functools
import math
import random
import subprocess
import sys
import time

import pytest

from taugraph import algebra
from taugraph.algebra import canonical, log2_floor, measure
from taugraph.domains import ALLOWED_RADICANDS, INTEGERS, QuadraticDomain, gapped_domain_for
from taugraph.domains import gapped as gapped_mod
from taugraph.factorization import Engine, _engines
from taugraph.graph import build_graph, is_k1_on, metrics, reduce
from taugraph.harness import accp_sample, check_atom_iff_k1
from taugraph.tau import builtin

from conftest import ACCEPTANCE_LINES
from oracles import (big_omega, full_graph_oracle, multiplicative_partitions, quad_atomic_factorizations,
                     vector_graph, x_power_times_linear_valid)

FULL = builtin("full")
DEG = builtin("same-degree")

CURATED_GAPPED = [
    "x^2", "x^3", "x^4", "x^5", "x^6", "x^7", "x^10", "x^12",
    "x^8-x^9", "x^3-x^2", "x^4-x^3", "x^5-x^4", "x^6-x^5",
    "x^2+1", "x^3+2", "(x^2+1)*x^2", "(x^2+1)^2", "x^3*(x^3+2)", "(x^2-2)*x^3", "(x^3-x^2)*(x^2+1)",
]


def _cold():
    algebra._divisors.cache_clear()
    gapped_mod._ambient_factor.cache_clear()
    _engines.clear()


def criterion(number: int, title: str, limit: float | None):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            _cold()
            status, elapsed = "FAIL", 0.0
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - t0
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
                status = "PASS"
            finally:
                elapsed = elapsed or time.perf_counter() - t0
                bound = f" < {limit:g}s" if limit is not None else ""
                line = f"[{status}] criterion {number:2d}: {title} ({elapsed:.2f}s{bound})"
                ACCEPTANCE_LINES.append(line)
                print(line)
        return run
    return wrap


def _label(v):
    i, j = v
    return f"x^{i}" if j == 0 else f"x^{i + 1} - x^{i}"


@criterion(1, "same-degree example: one atomic class {3,3,3}; 2 vertices, 1 edge, loop at x^3", 1.0)
def test_criterion_01_same_degree_example():
    dom, (x,) = gapped_domain_for(["x^8-x^9"])
    eng = Engine(DEG)
    atomic = eng.atomic_factorizations(x)
    assert len(atomic.nontrivial) == len(atomic) == 1
    assert sorted(algebra_degree(a) for a in atomic.factorizations[0].factors) == [3, 3, 3]
    g = build_graph(x, DEG, eng)
    assert len(g.vertices) == 2 and len(g.edges) == 1
    assert {str(v): k for v, k in g.loops.items() if k} == {"x^3": 1}
    # the vector model agrees
    atoms, edges, loops, facs = vector_graph((8, 1), x_power_times_linear_valid, lambda a, b: sum(a) == sum(b))
    assert sorted(map(_label, atoms)) == sorted(str(v) for v in g.vertices) and len(facs) == 1


def algebra_degree(a):
    return len(a.value) - 1


@criterion(2, "full relation example: 4 vertices, 5 edges, loops {x^2: 2, x^3: 1}", 1.0)
def test_criterion_02_full_example():
    dom, (x,) = gapped_domain_for(["x^8-x^9"])
    g = build_graph(x, FULL, Engine(FULL))
    atoms, edges, loops, _ = vector_graph((8, 1), x_power_times_linear_valid, lambda a, b: True)
    assert (len(atoms), len(edges)) == (4, 5)
    assert {_label(a): k for a, k in loops.items() if k} == {"x^2": 2, "x^3": 1}
    assert len(g.vertices) == 4 and len(g.edges) == 5
    assert {str(v): k for v, k in g.loops.items() if k} == {"x^2": 2, "x^3": 1}
    assert sorted(str(v) for v in g.vertices) == sorted(map(_label, atoms))
    assert {frozenset(map(str, e)) for e in g.edges} == {frozenset(map(_label, e)) for e in edges}
    r = reduce(g)
    assert r.vertices == g.vertices and r.edges == g.edges and not any(r.loops.values())


def _random_elements(rng: random.Random):
    out = [INTEGERS.element(rng.randint(2, 100_000)) for _ in range(70)]
    for d in ALLOWED_RADICANDS:
        q = QuadraticDomain(d)
        while len(out) < 70 + 14 * (ALLOWED_RADICANDS.index(d) + 1):
            v = (rng.randint(-40, 40), rng.randint(-40, 40))
            if q.norm(v) > 1:
                out.append(q.element(v))
    pieces = ["x^2", "x^3", "x^3-x^2", "x^4-x^3", "x^2+1", "x^3+2", "x^2-2"]
    texts = ["*".join(f"({rng.choice(pieces)})" for _ in range(rng.randint(1, 4))) for _ in range(60)]
    _, polys = gapped_domain_for(texts)
    return out + polys


@criterion(3, "empty relation: 200 random elements on every backend give K1 on canonical(x)", 5.0)
def test_criterion_03_empty_relation_k1():
    tau = builtin("empty")
    eng = Engine(tau)
    elems = _random_elements(random.Random(20240601))
    assert len(elems) == 200
    assert {e.domain.name.partition(":")[0] for e in elems} == {"int", "quad", "gapped-poly"}
    for x in elems:
        g = build_graph(x, tau, eng)
        assert is_k1_on(g, x), str(x)
        assert g.vertices[0] == canonical(x)


@criterion(4, "atom iff K1: zero violations on int, Z[sqrt(-5)] and curated polynomials", 60.0)
def test_criterion_04_atom_iff_k1_gate():
    ints = INTEGERS.sample(2, 500)
    for name in ("full", "coprime", "parity"):
        tau = builtin(name)
        rep = check_atom_iff_k1(ints, tau, Engine(tau))
        assert rep.ok and rep.summary["elements"] == 499, (name, rep.violations)
    rep = check_atom_iff_k1(QuadraticDomain(-5).sample(100), FULL, Engine(FULL))
    assert rep.ok, rep.violations
    _, polys = gapped_domain_for(CURATED_GAPPED)
    assert len(polys) == 20
    rep = check_atom_iff_k1(polys, DEG, Engine(DEG))
    assert rep.ok and rep.summary["elements"] == 20, rep.violations


@criterion(5, "int, full relation, n <= 2000: pseudocliques equal to the prime-divisor oracle", 30.0)
def test_criterion_05_integer_pseudocliques():
    eng = Engine(FULL)
    for n in range(2, 2001):
        g = build_graph(INTEGERS.element(n), FULL, eng)
        primes, edges, loops = full_graph_oracle(n)
        assert [v.value for v in g.vertices] == primes, n
        assert {(a.value, b.value) for a, b in g.edges} == edges, n
        assert {v.value: k for v, k in g.loops.items()} == loops, n
        assert metrics(g).pseudoclique, n


@criterion(6, "Z[sqrt(-5)], x = 6: disconnected, diameter inf, two atomic classes of length 2", 5.0)
def test_criterion_06_non_ufd_witness():
    q = QuadraticDomain(-5)
    x = q.element((6, 0))
    eng = Engine(FULL)
    g = build_graph(x, FULL, eng)
    m = metrics(g)
    assert not m.connected and m.diameter == math.inf
    classes = eng.atomic_factorizations(x)
    assert len(classes) == 2 and [len(f) for f in classes] == [2, 2]
    oracle, _ = quad_atomic_factorizations((6, 0), -5)
    as_sets = {tuple(sorted((frozenset(a.value for a in _associates(f_i)) for f_i in f.factors),
                            key=sorted)) for f in classes}
    assert as_sets == oracle


def _associates(a):
    return [a * u for u in (a.domain.element(w) for w in a.domain.units())]


@criterion(7, "x^p is a same-degree atom for p in {2,3,5,7,11}; so is x^4 - x^3", 1.0)
def test_criterion_07_prime_degree_atoms():
    texts = [f"x^{p}" for p in (2, 3, 5, 7, 11)] + ["x^4-x^3", "x^4"]
    _, elems = gapped_domain_for(texts)
    eng = Engine(DEG)
    assert all(eng.is_atom(x) for x in elems[:5])
    assert eng.is_atom(elems[5]) and algebra_degree(canonical(elems[5])) == 4
    assert not eng.is_atom(elems[6])


@criterion(8, "int, full relation, n <= 2000: class counts equal the multiset oracle", 60.0)
def test_criterion_08_count_oracle():
    eng = Engine(FULL)
    for n in range(2, 2001):
        got = len(eng.factorizations(INTEGERS.element(n)).nontrivial)
        assert got == multiplicative_partitions(n) - 1, n
    assert len(eng.factorizations(INTEGERS.element(12)).nontrivial) == 3
    assert len(eng.factorizations(INTEGERS.element(36)).nontrivial) == 8


@criterion(9, "chain length = Omega(n) on int n <= 2000; <= log2(measure) on every backend", 30.0)
def test_criterion_09_chain_bound():
    rep = accp_sample(INTEGERS.sample(2, 2000), FULL, engine=Engine(FULL))
    assert rep.ok
    assert [r["length"] for r in rep.table] == [big_omega(n) for n in range(2, 2001)]
    samples = [(INTEGERS.sample(2, 300), builtin(n)) for n in ("coprime", "parity", "empty")]
    samples += [(QuadraticDomain(d).sample(100), FULL) for d in ALLOWED_RADICANDS]
    _, polys = gapped_domain_for(CURATED_GAPPED)
    samples += [(polys, FULL), (polys, DEG)]
    for sample, tau in samples:
        rep = accp_sample(sample, tau, engine=Engine(tau))
        assert rep.ok, rep.violations
        for r, x in zip(rep.table, sorted({canonical(x) for x in sample})):
            assert r["length"] <= log2_floor(measure(x)) <= math.log2(measure(x))


CLI_RUNS = [
    ["graph", "--backend=gapped-poly", "--tau=same-degree", "--elem=x^8-x^9", "--format=dot"],
    ["graph", "--backend=gapped-poly", "--tau=full", "--elem=x^8-x^9", "--format=json"],
    ["graph", "--backend=int", "--tau=full", "--elem=12"],
    ["graph", "--backend=quad:-5", "--tau=full", "--elem=6"],
    ["factorizations", "--backend=int", "--tau=full", "--elem=12"],
    ["factorizations", "--backend=gapped-poly", "--tau=same-degree", "--elem=x^8-x^9", "--atomic"],
    ["factorizations", "--tau=empty", "--elem=12"],
    ["harness", "--check=atom-iff-k1", "--backend=int", "--tau=full", "--range=2:500"],
    ["harness", "--check=ufd-family", "--backend=quad:-5", "--tau=full", "--norm-bound=50"],
    ["harness", "--check=classify", "--backend=int", "--tau=parity", "--range=2:100"],
    ["harness", "--check=accp", "--backend=int", "--tau=full", "--range=2:300"],
]


def _cli(argv):
    proc = subprocess.run([sys.executable, "-m", "taugraph", *argv], capture_output=True, check=False)
    return proc.returncode, proc.stdout, proc.stderr


@criterion(10, "every command above is byte-identical across runs and worker counts", None)
def test_criterion_10_determinism():
    for argv in CLI_RUNS:
        first = _cli(argv)
        assert first[0] == 0, (argv, first[2])
        assert _cli(argv) == first, argv
        if argv[0] == "harness":
            assert _cli(argv + ["--workers=4"]) == first, argv


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
