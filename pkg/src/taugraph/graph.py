"""tau-irreducible divisor graphs, their invariants, and DOT/JSON output."""

from __future__ import annotations

import json
import math
from collections import Counter, deque
from dataclasses import dataclass, field, replace

from .algebra import Element, canonical
from .factorization import Engine, get_engine
from .tau import TauRelation


@dataclass(frozen=True)
class DivisorGraph:
    target: Element
    relation: str
    vertices: tuple[Element, ...]
    edges: frozenset  # frozenset of (a, b) with a < b
    loops: dict = field(default_factory=dict, compare=True)  # vertex -> count
    reduced: bool = False

    @property
    def empty(self) -> bool:
        return not self.vertices

    def adjacent(self, a: Element, b: Element) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbours(self, a: Element) -> list[Element]:
        return [b for b in self.vertices if b != a and self.adjacent(a, b)]

    def index(self) -> dict[Element, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def sorted_edges(self) -> list[tuple[Element, Element]]:
        return sorted(self.edges, key=lambda e: (e[0].sort_key(), e[1].sort_key()))


def build_graph(x: Element, tau: TauRelation, engine: Engine | None = None) -> DivisorGraph:
    """G_tau(x): atoms tau-dividing x; an edge when two atoms occur together in
    some tau-factorization of x; a vertex repeated n times in a tau-atomic
    factorization gets n - 1 loops (maximum over all such factorizations)."""
    eng = engine or get_engine(tau)
    vertices = tuple(eng.tau_irreducible_divisors(x))
    vset = set(vertices)
    edges = set()
    loops = {v: 0 for v in vertices}
    for ms in eng.factor_multisets(x):
        atoms = sorted({a for a in ms if a in vset})
        for i, a in enumerate(atoms):
            for b in atoms[i + 1:]:
                edges.add((a, b))
        if all(a in vset for a in ms):
            for a, n in Counter(ms).items():
                loops[a] = max(loops[a], n - 1)
    return DivisorGraph(x, tau.label, vertices, frozenset(edges), loops)


def reduce(g: DivisorGraph) -> DivisorGraph:
    return replace(g, loops={v: 0 for v in g.vertices}, reduced=True)


@dataclass(frozen=True)
class GraphMetrics:
    deg: dict
    degl: dict
    loops: dict
    diameter: float | int | None  # None on the empty graph, math.inf if disconnected
    connected: bool
    complete: bool
    clique: bool
    pseudoclique: bool
    k1: bool
    empty: bool

    def diameter_text(self) -> str:
        if self.diameter is None:
            return "empty"
        return "inf" if self.diameter == math.inf else str(self.diameter)


def distances_from(g: DivisorGraph, source: Element) -> dict[Element, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in g.neighbours(a):
            if b not in dist:
                dist[b] = dist[a] + 1
                queue.append(b)
    return dist


def distance(g: DivisorGraph, a: Element, b: Element) -> float | int:
    return distances_from(g, a).get(b, math.inf)


def metrics(g: DivisorGraph) -> GraphMetrics:
    deg = {v: len(g.neighbours(v)) for v in g.vertices}
    loops = {v: g.loops.get(v, 0) for v in g.vertices}
    degl = {v: deg[v] + loops[v] for v in g.vertices}
    n = len(g.vertices)
    if n == 0:
        return GraphMetrics(deg, degl, loops, None, False, False, False, False, False, True)
    diameter = 0
    for v in g.vertices:
        dist = distances_from(g, v)
        if len(dist) < n:
            diameter = math.inf
            break
        diameter = max(diameter, max(dist.values()))
    complete = len(g.edges) == n * (n - 1) // 2
    has_loops = any(loops.values())
    return GraphMetrics(
        deg=deg,
        degl=degl,
        loops=loops,
        diameter=diameter,
        connected=diameter != math.inf,
        complete=complete,
        clique=complete and not has_loops,
        pseudoclique=complete,
        k1=n == 1 and not has_loops,
        empty=False,
    )


def is_k1_on(g: DivisorGraph, x: Element) -> bool:
    """G is a single loopless vertex equal to canonical(x)."""
    return (len(g.vertices) == 1 and g.vertices[0] == canonical(x)
            and not g.edges and not any(g.loops.values()))


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(g: DivisorGraph, comments: list[str] | None = None) -> str:
    """Undirected DOT; loops are repeated self-edges; byte-stable ordering."""
    idx = g.index()
    lines = ["graph G {"]
    for c in comments or []:
        lines.append(f"  // {c}")
    lines.append(f'  label="{_dot_escape(str(g.target))} ({_dot_escape(g.relation)}'
                 f'{", reduced" if g.reduced else ""})";')
    for v in g.vertices:
        lines.append(f'  n{idx[v]} [label="{_dot_escape(str(v))}"];')
    for a, b in g.sorted_edges():
        lines.append(f"  n{idx[a]} -- n{idx[b]};")
    for v in g.vertices:
        for _ in range(g.loops.get(v, 0)):
            lines.append(f"  n{idx[v]} -- n{idx[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: DivisorGraph, with_metrics: bool = True) -> dict:
    idx = g.index()
    out = {
        "target": str(g.target),
        "relation": g.relation,
        "reduced": g.reduced,
        "vertices": [str(v) for v in g.vertices],
        "edges": [[idx[a], idx[b]] for a, b in g.sorted_edges()],
        "loops": {str(idx[v]): g.loops[v] for v in g.vertices if g.loops.get(v, 0)},
    }
    if with_metrics:
        m = metrics(g)
        out["metrics"] = {
            "empty": m.empty,
            "deg": [m.deg[v] for v in g.vertices],
            "degl": [m.degl[v] for v in g.vertices],
            "diameter": m.diameter_text() if m.diameter in (None, math.inf) else m.diameter,
            "connected": m.connected,
            "clique": m.clique,
            "pseudoclique": m.pseudoclique,
            "k1": m.k1,
        }
    return out


def to_json(g: DivisorGraph) -> str:
    return json.dumps(to_json_dict(g), indent=2) + "\n"


def summary_lines(g: DivisorGraph) -> list[str]:
    m = metrics(g)
    lines = [
        f"target: {g.target}",
        f"relation: {g.relation}{' (reduced)' if g.reduced else ''}",
        f"vertices: {len(g.vertices)}  edges: {len(g.edges)}  loops: {sum(m.loops.values())}",
    ]
    if m.empty:
        lines.append("graph: empty (no tau-atoms divide the target)")
        return lines
    lines.append(
        f"diameter: {m.diameter_text()}  connected: {m.connected}  "
        f"pseudoclique: {m.pseudoclique}  clique: {m.clique}  K1: {m.k1}")
    for v in g.vertices:
        lines.append(f"  {v}: deg={m.deg[v]} degl={m.degl[v]} loops={m.loops[v]}")
    return lines
