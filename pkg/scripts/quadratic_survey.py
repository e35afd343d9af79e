"""Classify Z[sqrt(d)] samples for every supported radicand.

    python3 scripts/quadratic_survey.py --norm-bound 100
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from taugraph.domains import ALLOWED_RADICANDS, QuadraticDomain
from taugraph.factorization import Engine
from taugraph.harness import classify_sampled
from taugraph.tau import builtin


@dataclass(frozen=True)
class SurveyConfig:
    norm_bound: int = 100
    relation: str = "full"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--norm-bound", type=int, default=100)
    ap.add_argument("--relation", default="full")
    args = ap.parse_args()
    cfg = SurveyConfig(args.norm_bound, args.relation)
    tau = builtin(cfg.relation)
    for d in ALLOWED_RADICANDS:
        rep = classify_sampled(QuadraticDomain(d).sample(cfg.norm_bound), tau, Engine(tau))
        props = rep.summary["properties"]
        cells = "  ".join(f"{p}={'ok' if v['witness'] is None else v['witness']}" for p, v in props.items())
        print(f"d={d:4d}  {cells}")


if __name__ == "__main__":
    main()
