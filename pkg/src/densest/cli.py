"""Command-line entry point.

Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 refused by the
enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import saa as saamod
from .errors import EnumerationCapError, InstanceInfeasibleError
from .generators import PlantedInstance, erdos_renyi, planted_instance
from .graph import Graph
from .harness import ENUMERATION_CAP, StudyConfig, brute_force_densest, first_hit_iteration, \
    run_replication_study
from .plot import trace_svg
from .saa import SaaConfig
from .samplers import ALGORITHMS, SamplerConfig, run_chain

EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_CAP = 3

RUN_DEFAULTS = {
    "algorithm": None,
    "k": None,
    "max_iterations": 10_000,
    "alpha": 0.9,
    "seed": 0,
    "target_density": 1.0,
    "stop_at_target": False,
}
SAA_DEFAULTS = {
    "n_regions": saamod.DEFAULT_REGIONS,
    "a_first": saamod.DEFAULT_A_FIRST,
    "a_last": saamod.DEFAULT_A_LAST,
    "thresholds": None,
    "plateau": saamod.DEFAULT_PLATEAU,
    "base_temperature": saamod.DEFAULT_BASE_TEMPERATURE,
}
INSTANCE_KEYS = {"path", "n", "p", "k", "seed"}


class UsageError(Exception):
    pass


def _fail(code: int, msg: str) -> int:
    print(f"densest: error: {msg}", file=sys.stderr)
    return code


def _add_saa_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("SAA")
    g.add_argument("--n-regions", type=int, default=None,
                   help=f"number of density bands (default: {SAA_DEFAULTS['n_regions']})")
    g.add_argument("--a-first", type=float, default=None,
                   help=f"lowest band threshold (default: {SAA_DEFAULTS['a_first']})")
    g.add_argument("--a-last", type=float, default=None,
                   help=f"highest band threshold (default: {SAA_DEFAULTS['a_last']})")
    g.add_argument("--plateau", type=int, default=None,
                   help=f"iterations before cooling and gain decay start "
                        f"(default: {SAA_DEFAULTS['plateau']})")
    g.add_argument("--base-temperature", type=float, default=None,
                   help=f"SAA starting temperature (default: {SAA_DEFAULTS['base_temperature']})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="densest",
                                     description="Densest k-subgraph search with SM, SA and SAA.")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("generate", help="write a G(n, p) graph with a planted clique",
                       formatter_class=fmt)
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--p", type=float, required=True, help="edge probability")
    p.add_argument("--k", type=int, default=10, help="planted clique size (0 disables planting)")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", type=Path, required=True,
                   help="edge-list path; metadata goes to <out>.json")

    p = sub.add_parser("run", help="run one chain and write its trace CSV")
    p.add_argument("--graph", type=Path, default=None, help="edge-list file")
    p.add_argument("--config", type=Path, default=None,
                   help="run-config JSON; explicit flags override its values")
    p.add_argument("--algo", choices=[a.lower() for a in ALGORITHMS], default=None,
                   help="algorithm")
    p.add_argument("--k", type=int, default=None, help="subgraph size")
    p.add_argument("--iters", type=int, default=None,
                   help=f"iterations (default: {RUN_DEFAULTS['max_iterations']})")
    p.add_argument("--alpha", type=float, default=None,
                   help=f"local-move probability for SA/SAA (default: {RUN_DEFAULTS['alpha']})")
    p.add_argument("--seed", type=int, default=None,
                   help=f"chain seed (default: {RUN_DEFAULTS['seed']})")
    p.add_argument("--target-density", type=float, default=None,
                   help=f"density reported as a hit (default: {RUN_DEFAULTS['target_density']})")
    p.add_argument("--stop-at-target", action="store_true", default=None,
                   help="stop the chain at the first hit (default: off)")
    p.add_argument("--trace-out", type=Path, default=None, help="trace CSV path")
    _add_saa_flags(p)

    p = sub.add_parser("bench", help="replication study over planted instances",
                       formatter_class=fmt)
    p.add_argument("--replicates", type=int, default=100, help="number of instances")
    p.add_argument("--n", type=int, default=100, help="node count")
    p.add_argument("--p", type=float, default=0.05, help="edge probability")
    p.add_argument("--k", type=int, default=10, help="planted clique and subgraph size")
    p.add_argument("--iters", type=int, default=10_000, help="iterations per chain")
    p.add_argument("--algos", default="sm,sa,saa", help="comma-separated algorithms")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--alpha", type=float, default=0.9, help="local-move probability")
    p.add_argument("--stop-at-target", action="store_true",
                   help="stop each chain at its first hit (time-to-clique timing)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", type=Path, default=None, help="summary JSON path")
    for flag, key, typ, desc in (("--n-regions", "n_regions", int, "number of density bands"),
                                 ("--a-first", "a_first", float, "lowest band threshold"),
                                 ("--a-last", "a_last", float, "highest band threshold"),
                                 ("--plateau", "plateau", int, "SAA plateau length"),
                                 ("--base-temperature", "base_temperature", float,
                                  "SAA starting temperature")):
        p.add_argument(flag, type=typ, default=SAA_DEFAULTS[key], help=desc)

    p = sub.add_parser("plot", help="SVG plot of a trace CSV", formatter_class=fmt)
    p.add_argument("--trace", type=Path, required=True, help="trace CSV")
    p.add_argument("--out", type=Path, required=True, help="SVG path")

    p = sub.add_parser("oracle", help="exact densest k-subgraph by enumeration",
                       formatter_class=fmt)
    p.add_argument("--graph", type=Path, required=True, help="edge-list file")
    p.add_argument("--k", type=int, required=True, help="subgraph size")
    p.add_argument("--cap", type=int, default=ENUMERATION_CAP, help="maximum subsets to enumerate")
    return parser


# -- generate -------------------------------------------------------------

def cmd_generate(args, parser) -> int:
    if not 0.0 <= args.p <= 1.0:
        parser.error(f"--p must be in [0, 1], got {args.p}")
    if args.n < 1:
        parser.error("--n must be positive")
    if not 0 <= args.k <= args.n:
        parser.error(f"--k must be in [0, n], got {args.k}")
    if not 0 <= args.seed < 2 ** 64:
        parser.error("--seed must be an unsigned 64-bit integer")
    if args.k == 0:
        inst = PlantedInstance(erdos_renyi(args.n, args.p, args.seed), (), args.p, args.seed)
    else:
        inst = planted_instance(args.n, args.p, args.k, args.seed)
    try:
        meta = inst.write(args.out)
    except OSError as exc:
        return _fail(EXIT_RUNTIME, f"cannot write {args.out}: {exc}")
    print(f"n {inst.graph.n}")
    print(f"m {inst.graph.m}")
    print("planted " + " ".join(str(v) for v in inst.planted))
    print(f"wrote {args.out} and {meta}")
    return 0


# -- run ------------------------------------------------------------------

def _load_config_doc(path: Path) -> dict:
    doc = json.loads(path.read_text())
    if not isinstance(doc, dict):
        raise UsageError("run config must be a JSON object")
    allowed = set(RUN_DEFAULTS) | {"saa", "instance"}
    unknown = set(doc) - allowed
    if unknown:
        raise UsageError(f"unknown run-config fields: {sorted(unknown)}")
    if "saa" in doc:
        bad = set(doc["saa"]) - set(SAA_DEFAULTS)
        if bad:
            raise UsageError(f"unknown saa fields: {sorted(bad)}")
    if "instance" in doc:
        bad = set(doc["instance"]) - INSTANCE_KEYS
        if bad:
            raise UsageError(f"unknown instance fields: {sorted(bad)}")
    return doc


def _resolve_run(args) -> tuple[dict, dict, dict]:
    doc = _load_config_doc(args.config) if args.config else {}
    run = {**RUN_DEFAULTS, **{k: v for k, v in doc.items() if k in RUN_DEFAULTS}}
    saa = {**SAA_DEFAULTS, **doc.get("saa", {})}
    inst = dict(doc.get("instance", {}))
    flags = {"algorithm": args.algo, "k": args.k, "max_iterations": args.iters,
             "alpha": args.alpha, "seed": args.seed, "target_density": args.target_density,
             "stop_at_target": args.stop_at_target}
    run.update({k: v for k, v in flags.items() if v is not None})
    saa_flags = {"n_regions": args.n_regions, "a_first": args.a_first, "a_last": args.a_last,
                 "plateau": args.plateau, "base_temperature": args.base_temperature}
    saa.update({k: v for k, v in saa_flags.items() if v is not None})
    if args.graph is not None:
        inst = {"path": str(args.graph)}
    return run, saa, inst


def _load_instance(inst: dict) -> Graph:
    if "path" in inst:
        return Graph.read(inst["path"])
    if {"n", "p", "k"} <= set(inst):
        return planted_instance(inst["n"], inst["p"], inst["k"], inst.get("seed", 0)).graph
    raise UsageError("no graph given: pass --graph or an 'instance' block in --config")


def cmd_run(args, parser) -> int:
    try:
        run, saa, inst = _resolve_run(args)
    except (UsageError, json.JSONDecodeError, OSError) as exc:
        parser.error(str(exc))
    if run["algorithm"] is None:
        parser.error("--algo is required")
    if run["k"] is None:
        parser.error("--k is required")
    if run["max_iterations"] < 1:
        parser.error("--iters must be at least 1")
    try:
        cfg = SamplerConfig(run["algorithm"], run["k"], run["max_iterations"], alpha=run["alpha"],
                            seed=run["seed"], target_density=run["target_density"],
                            stop_at_target=run["stop_at_target"])
        saa_cfg = SaaConfig.from_grid(saa["n_regions"], saa["a_first"], saa["a_last"],
                                      saa["thresholds"], plateau=saa["plateau"],
                                      base_temperature=saa["base_temperature"])
    except ValueError as exc:
        parser.error(str(exc))
    try:
        g = _load_instance(inst)
    except UsageError as exc:
        parser.error(str(exc))
    except (OSError, ValueError) as exc:
        return _fail(EXIT_RUNTIME, f"cannot load graph: {exc}")
    if cfg.k > g.n:
        return _fail(EXIT_RUNTIME, f"k={cfg.k} exceeds the node count {g.n}")
    try:
        trace, state = run_chain(g, cfg, saa_cfg)
    except InstanceInfeasibleError as exc:
        return _fail(EXIT_RUNTIME, str(exc))
    if args.trace_out is not None:
        try:
            trace.write_csv(args.trace_out)
        except OSError as exc:
            return _fail(EXIT_RUNTIME, f"cannot write {args.trace_out}: {exc}")
    target = cfg.target_density if cfg.target_density is not None else 1.0
    hit = first_hit_iteration(trace, target)
    print(f"best_density {state.best_density:.6f} first_hit {hit if hit is not None else 'none'}")
    print("best " + " ".join(str(v) for v in state.best))
    return 0


# -- bench ----------------------------------------------------------------

def cmd_bench(args, parser) -> int:
    algos = tuple(a.strip().upper() for a in args.algos.split(",") if a.strip())
    if not algos:
        parser.error("--algos must name at least one of sm, sa, saa")
    if any(a not in ALGORITHMS for a in algos):
        parser.error(f"--algos entries must be among sm, sa, saa, got {args.algos!r}")
    if args.replicates < 1 or args.iters < 1 or args.jobs < 1:
        parser.error("--replicates, --iters and --jobs must be positive")
    if not 0.0 <= args.p <= 1.0:
        parser.error(f"--p must be in [0, 1], got {args.p}")
    try:
        cfg = StudyConfig(
            replicates=args.replicates, n=args.n, p=args.p, k=args.k, max_iterations=args.iters,
            algorithms=algos, master_seed=args.seed, alpha=args.alpha,
            saa=SaaConfig.from_grid(args.n_regions, args.a_first, args.a_last,
                                    plateau=args.plateau, base_temperature=args.base_temperature),
            stop_at_target=args.stop_at_target)
    except ValueError as exc:
        parser.error(str(exc))
    summary = run_replication_study(cfg, jobs=args.jobs)
    if args.out is not None:
        try:
            summary.write(args.out)
        except OSError as exc:
            return _fail(EXIT_RUNTIME, f"cannot write {args.out}: {exc}")
    print(summary.table())
    return 0


# -- plot / oracle --------------------------------------------------------

def cmd_plot(args, parser) -> int:
    try:
        text = args.trace.read_text(encoding="ascii")
    except OSError as exc:
        return _fail(EXIT_RUNTIME, f"cannot read {args.trace}: {exc}")
    try:
        svg = trace_svg(text)
    except ValueError as exc:
        return _fail(EXIT_RUNTIME, f"{args.trace}: {exc}")
    try:
        args.out.write_text(svg)
    except OSError as exc:
        return _fail(EXIT_RUNTIME, f"cannot write {args.out}: {exc}")
    return 0


def cmd_oracle(args, parser) -> int:
    try:
        g = Graph.read(args.graph)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_RUNTIME, f"cannot load graph: {exc}")
    if not 2 <= args.k <= g.n:
        parser.error(f"--k must be in [2, n={g.n}]")
    try:
        density, witness = brute_force_densest(g, args.k, cap=args.cap)
    except EnumerationCapError as exc:
        print(f"densest: refused: {exc}", file=sys.stderr)
        print(f"subsets {exc.count}")
        return EXIT_CAP
    print(f"{density:.6f} [{', '.join(str(v) for v in witness)}]")
    return 0


COMMANDS = {"generate": cmd_generate, "run": cmd_run, "bench": cmd_bench, "plot": cmd_plot,
            "oracle": cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    return COMMANDS[args.command](args, sub)


if __name__ == "__main__":
    sys.exit(main())
