"""Sweep an integer range under several relations and tabulate graph shapes.

    python3 scripts/integer_sweep.py --hi 2000 --relations full coprime parity
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import Counter
from dataclasses import dataclass, field

from taugraph.domains import INTEGERS
from taugraph.factorization import Caps, Engine
from taugraph.graph import build_graph, metrics
from taugraph.tau import from_string


@dataclass
class SweepConfig:
    lo: int = 2
    hi: int = 1000
    relations: list[str] = field(default_factory=lambda: ["full", "coprime", "parity"])
    max_factorizations: int = 200_000


def sweep(cfg: SweepConfig):
    for rel in cfg.relations:
        tau = from_string(rel, INTEGERS)
        eng = Engine(tau, Caps(max_factorizations=cfg.max_factorizations))
        for x in INTEGERS.sample(cfg.lo, cfg.hi):
            g = build_graph(x, tau, eng)
            m = metrics(g)
            yield {
                "relation": tau.label,
                "n": x.value,
                "atom": eng.is_atom(x),
                "classes": len(eng.factorizations(x)),
                "atomic_classes": len(eng.atomic_factorizations(x)),
                "vertices": len(g.vertices),
                "edges": len(g.edges),
                "loops": sum(m.loops.values()),
                "diameter": m.diameter_text(),
                "pseudoclique": m.pseudoclique,
            }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=int, default=2)
    ap.add_argument("--hi", type=int, default=1000)
    ap.add_argument("--relations", nargs="+", default=["full", "coprime", "parity"])
    ap.add_argument("--csv", action="store_true", help="dump per-element rows instead of the tally")
    args = ap.parse_args()
    cfg = SweepConfig(args.lo, args.hi, args.relations)
    rows = list(sweep(cfg))
    if args.csv:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
        return
    for rel in dict.fromkeys(r["relation"] for r in rows):
        sub = [r for r in rows if r["relation"] == rel]
        diam = Counter(r["diameter"] for r in sub)
        print(f"{rel}: {len(sub)} elements, {sum(r['atom'] for r in sub)} atoms, "
              f"{sum(r['pseudoclique'] for r in sub)} pseudocliques, "
              f"{sum(r['atomic_classes'] > 1 for r in sub)} with several atomic classes, "
              f"diameters {dict(sorted(diam.items()))}")


if __name__ == "__main__":
    main()
