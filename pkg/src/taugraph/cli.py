"""Command-line interface: ``taugraph {graph,factorizations,harness}``.

Exit codes: 0 ok, 1 violation, 2 usage, 3 parse, 4 cap exceeded. Every
error is reported as one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import BackendMismatch, DomainError, canonicalize
from .domains import DomainConfig, ParseError, gapped_domain_for
from .factorization import Caps, CapExceeded, Engine
from .graph import build_graph, reduce, summary_lines, to_dot, to_json
from .harness import CHECKS, HarnessReport, accp_sample
from .tau import check_property, from_string as tau_from_string

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    backend: str = "int"
    tau: str = "full"
    elems: list[str] = field(default_factory=list)
    format: str | None = None
    reduced: bool = False
    atomic: bool = False
    check: str | None = None
    prop: str | None = None
    range: str | None = None
    norm_bound: int | None = None
    max_factorizations: int = 200_000
    max_depth: int = 256
    trust_factors: bool = False
    workers: int = 1
    output: str | None = None

    def __post_init__(self):
        if self.max_factorizations < 1 or self.max_depth < 1 or self.workers < 1:
            raise UsageError("caps and worker counts must be positive")

    @property
    def caps(self) -> Caps:
        return Caps(self.max_factorizations, self.max_depth)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--backend", help="int | quad:<d> with d in -1,-2,-5,-6,-10 | gapped-poly")
    common.add_argument("--tau", help="full | empty | subset:<expr> | same-degree | coprime | parity")
    common.add_argument("--elem", action="append", dest="elems", help="element expression (repeatable)")
    common.add_argument("--elems", action="append", dest="elem_lists", help="comma-separated elements")
    common.add_argument("--format", choices=["dot", "json", "text"])
    common.add_argument("--max-factorizations", type=int)
    common.add_argument("--max-depth", type=int)
    common.add_argument("--trust-factors", action="store_true", default=None,
                        help="accept declared polynomial factors of degree >= 4 as irreducible")
    common.add_argument("--workers", type=int)
    common.add_argument("--output", "-o", help="write output here instead of stdout")
    common.add_argument("--config", help="key=value file mirroring these flags")

    parser = _Parser(prog="taugraph", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file; may name the command")
    sub = parser.add_subparsers(dest="command")
    g = sub.add_parser("graph", parents=[common], help="tau-irreducible divisor graph of an element")
    g.add_argument("--reduced", action="store_true", default=None, help="drop loops")
    f = sub.add_parser("factorizations", parents=[common], help="list tau-factorization classes")
    f.add_argument("--atomic", action="store_true", default=None, help="only tau-atomic factorizations")
    h = sub.add_parser("harness", parents=[common], help="run a characterization check over a sample")
    h.add_argument("--check", help=f"one of {', '.join(CHECKS)}, property")
    h.add_argument("--property", dest="prop", help="relation property for --check=property")
    h.add_argument("--range", help="integer sample lo:hi (inclusive)")
    h.add_argument("--norm-bound", type=int, help="quadratic sample: all elements with norm <= bound")
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        out[key.strip().replace("_", "-")] = value.strip()
    return out


_BOOL_KEYS = {"reduced", "atomic", "trust-factors"}
_INT_KEYS = {"max-factorizations", "max-depth", "workers", "norm-bound"}


def resolve_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if v is not None}
    file_values = read_config(ns.config) if getattr(ns, "config", None) else {}
    command = values.get("command") or file_values.get("command")
    if command not in ("graph", "factorizations", "harness"):
        raise UsageError("expected a command: graph, factorizations or harness")
    merged: dict = {}
    for key, raw in file_values.items():
        attr = "prop" if key == "property" else key.replace("-", "_")
        if key in ("command", "config"):
            continue
        if key in _BOOL_KEYS:
            merged[attr] = raw.lower() in ("1", "true", "yes", "on")
        elif key in _INT_KEYS:
            try:
                merged[attr] = int(raw)
            except ValueError:
                raise UsageError(f"config key {key} needs an integer") from None
        elif key in ("elem", "elems"):
            merged.setdefault("elems", []).extend(_split_list(raw) if key == "elems" else [raw])
        elif attr in RunConfig.__dataclass_fields__:
            merged[attr] = raw
        else:
            raise UsageError(f"unknown config key {key!r}")
    cli_elems = list(values.pop("elems", []) or [])
    for lst in values.pop("elem_lists", []) or []:
        cli_elems.extend(_split_list(lst))
    values.pop("config", None)
    values.pop("command", None)
    merged.update(values)
    if cli_elems:
        merged["elems"] = cli_elems
    return RunConfig(command=command, **merged)


def _split_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _backend(cfg: RunConfig) -> DomainConfig:
    try:
        return DomainConfig.from_string(cfg.backend, cfg.trust_factors)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _relation(cfg: RunConfig, domain):
    try:
        return tau_from_string(cfg.tau, domain)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _domain_and_elems(cfg: RunConfig):
    dc = _backend(cfg)
    if dc.kind == "gapped-poly":
        domain, elems = gapped_domain_for(cfg.elems, cfg.trust_factors)
        return domain, elems
    domain = dc.build()
    return domain, [domain.parse(t) for t in cfg.elems]


def _single_element(cfg: RunConfig):
    if len(cfg.elems) != 1:
        raise UsageError(f"{cfg.command} needs exactly one --elem")
    domain, elems = _domain_and_elems(cfg)
    x = elems[0]
    if x.is_unit:
        raise UsageError(f"{x} is a unit; need a non-zero non-unit")
    return domain, x


def cmd_graph(cfg: RunConfig) -> tuple[int, str]:
    domain, x = _single_element(cfg)
    tau = _relation(cfg, domain)
    g = build_graph(x, tau, Engine(tau, cfg.caps))
    if cfg.reduced:
        g = reduce(g)
    fmt = cfg.format or "dot"
    if fmt == "dot":
        return EXIT_OK, to_dot(g, comments=summary_lines(g))
    if fmt == "json":
        return EXIT_OK, to_json(g)
    return EXIT_OK, "\n".join(summary_lines(g)) + "\n"


def cmd_factorizations(cfg: RunConfig) -> tuple[int, str]:
    domain, x = _single_element(cfg)
    tau = _relation(cfg, domain)
    eng = Engine(tau, cfg.caps)
    fs = eng.atomic_factorizations(x) if cfg.atomic else eng.factorizations(x)
    fmt = cfg.format or "text"
    if fmt == "dot":
        raise UsageError("factorizations has no DOT output; use text or json")
    c, u = canonicalize(x)
    if fmt == "json":
        doc = {
            "target": str(x),
            "canonical": str(c),
            "unit": str(u),
            "relation": tau.label,
            "atomic_only": cfg.atomic,
            "target_is_atom": eng.is_atom(x),
            "classes": len(fs),
            "nontrivial_classes": len(fs.nontrivial),
            "factorizations": [dict(f.to_dict(), trivial=f.trivial) for f in fs],
        }
        return EXIT_OK, json.dumps(doc, indent=2) + "\n"
    lines = [
        f"# target: {x} (canonical {c}, unit {u})",
        f"# relation: {tau.label}{'  atomic factorizations only' if cfg.atomic else ''}",
    ]
    for f in fs:
        lines.append(str(f) + ("    [trivial]" if f.trivial else ""))
    lines.append(f"# classes: {len(fs)} ({len(fs.nontrivial)} nontrivial)")
    return EXIT_OK, "\n".join(lines) + "\n"


def _harness_sample(cfg: RunConfig, domain):
    if cfg.range:
        if domain.name != "int":
            raise UsageError("--range samples need the int backend")
        lo, sep, hi = cfg.range.partition(":")
        try:
            return domain.sample(int(lo), int(hi))
        except ValueError:
            raise UsageError(f"bad range {cfg.range!r}; expected lo:hi") from None
    if cfg.norm_bound is not None:
        if not domain.name.startswith("quad"):
            raise UsageError("--norm-bound samples need a quad backend")
        return domain.sample(cfg.norm_bound)
    return None


def cmd_harness(cfg: RunConfig) -> tuple[int, str]:
    if not cfg.check:
        raise UsageError("harness needs --check")
    if cfg.check not in CHECKS and cfg.check != "property":
        raise UsageError(f"unknown check {cfg.check!r}; choose from {', '.join(CHECKS)}, property")
    if cfg.elems:
        domain, sample = _domain_and_elems(cfg)
    else:
        domain = _backend(cfg).build()
        sample = None
    ranged = _harness_sample(cfg, domain)
    if ranged is not None:
        sample = (sample or []) + ranged
    if not sample:
        raise UsageError("harness needs a sample: --range, --norm-bound or --elems")
    tau = _relation(cfg, domain)
    eng = Engine(tau, cfg.caps)
    if cfg.check == "property":
        if not cfg.prop:
            raise UsageError("--check=property needs --property")
        rep = check_property(tau, cfg.prop, sample, eng)
        doc = rep.to_dict()
        doc["declared"] = rep.property in tau.declared
        status = EXIT_VIOLATION if (doc["declared"] and not rep.ok) else EXIT_OK
        return status, json.dumps(doc, indent=2) + "\n"
    if cfg.check == "accp":
        report: HarnessReport = accp_sample(sample, tau, cfg.max_depth, eng, cfg.workers)
    else:
        report = CHECKS[cfg.check](sample, tau, engine=eng, workers=cfg.workers)
    return (EXIT_OK if report.ok else EXIT_VIOLATION), report.to_json()


COMMANDS = {"graph": cmd_graph, "factorizations": cmd_factorizations, "harness": cmd_harness}


def _fail(kind: str, code: int, message: str) -> int:
    print(json.dumps({"error": kind, "exit": code, "message": message}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = resolve_config(argv)
        status, text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        return _fail("usage", EXIT_USAGE, str(exc))
    except ParseError as exc:
        return _fail("parse", EXIT_PARSE, str(exc))
    except CapExceeded as exc:
        return _fail("cap", EXIT_CAP, str(exc))
    except BackendMismatch as exc:
        return _fail("usage", EXIT_USAGE, str(exc))
    except DomainError as exc:
        # element-level domain errors come from input that cannot be represented
        return _fail("parse", EXIT_PARSE, str(exc))
    except OSError as exc:
        return _fail("usage", EXIT_USAGE, str(exc))
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stdout = None  # reader went away; nothing left to report
    return status


if __name__ == "__main__":
    sys.exit(main())
