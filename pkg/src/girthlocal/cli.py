"""Command-line front end for the evolution integrators, the finite-graph
round algorithms, and the exact small-graph oracles.

Subcommands
-----------
evolve    integrate a degree-evolution process to its stopping point
simulate  run a round algorithm on a fresh random regular multigraph
oracle    exact optimum (plus witness) for a small edge-list file
refine    convergence report across a decreasing ladder of step sizes

Every command prints a human-readable summary and can also write a JSON
report (``--json``).  Identical command line and seed give a byte-identical
report apart from the wall-time field.  Relative output paths are resolved
under ``$GIRTHLOCAL_OUT`` when that variable is set.
"""
from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config_model import generate, load_edge_list
from .cut_evolution import CutRules
from .cut_local_algorithm import run_cut
from .evolution_core import (
    EvolutionParams,
    IntegrationError,
    integrate,
    refine,
)
from .exact_oracle import from_multigraph, max_cut, max_independent_set
from .is_evolution import Is3Rules, Is4Rules
from .is_local_algorithm import RoundSchedule
from .is_local_algorithm import run as run_is
from .is_local_algorithm import verify_independent

# step sizes used by the reference listings; --paper-epsilon switches to them
LISTING_STEPS = {"is3": 6.3e-9, "is4": 1e-8, "cut3": 1.1e-8}

# ladders known to stay inside each recurrence's valid range; coarser steps
# can push a degree proportion negative and abort the run
REFINE_LADDERS = {
    ("is3", True): (1e-5, 1e-6, 1e-7),
    ("is3", False): (1.6e-4, 8e-5, 4e-5),
    ("is4", True): (1e-5, 5e-6, 2.5e-6),
    ("cut3", True): (1.6e-4, 8e-5, 4e-5),
}


def _resolve_out(path_str: str) -> Path:
    p = Path(path_str)
    base = os.environ.get("GIRTHLOCAL_OUT")
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


# -- reports ----------------------------------------------------------------


@dataclass
class RunReport:
    """Everything one command run produced, minus bulky witnesses.

    ``corollaries`` are always recomputed from the headline figures at
    serialization time, never stored, so a report cannot drift internally.
    """

    command: str
    kind: str  # "independent" | "cut" | "report"
    parameters: dict
    seed: object
    headline: dict
    valid: bool = True
    rounds: object = None
    details: dict = field(default_factory=dict)
    wall_time_s: object = None

    def corollaries(self) -> dict:
        for key in ("independent", "ratio", "mean_ratio", "good"):
            if key in self.headline and self.headline[key]:
                x = float(self.headline[key])
                break
        else:
            return {}
        if self.kind == "independent":
            return {"fractional_coloring_number": 1.0 / x}
        if self.kind == "cut":
            return {"fractional_edge_coloring_number": 1.5 / x}
        return {}

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "kind": self.kind,
            "parameters": self.parameters,
            "seed": self.seed,
            "headline": self.headline,
            "corollaries": self.corollaries(),
            "valid": self.valid,
            "rounds": self.rounds,
            "wall_time_s": self.wall_time_s,
        }
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        data = dict(data)
        data.pop("corollaries", None)  # derived, never stored independently
        return cls(**data)


def _print_value(name: str, value) -> None:
    if isinstance(value, float):
        print(f"{name}: {value:.10f}")
    else:
        print(f"{name}: {value}")


def _emit(report: RunReport, json_path) -> None:
    print(f"command: {report.command}")
    for key in sorted(report.headline):
        _print_value(key, report.headline[key])
    for key, value in sorted(report.corollaries().items()):
        _print_value(key.replace("_", " "), value)
    if report.rounds is not None:
        _print_value("rounds", report.rounds)
    _print_value("valid", report.valid)
    if report.wall_time_s is not None:
        print(f"wall time: {report.wall_time_s:.2f}s")
    if json_path:
        path = _resolve_out(json_path)
        path.write_text(report.to_json())
        print(f"report written to {path}")


# -- evolve -----------------------------------------------------------------


def _evolve_rules(args):
    if args.target == "is3":
        return Is3Rules(improvement=not args.no_improvement)
    if args.target == "is4":
        return Is4Rules()
    return CutRules(mode=args.mode.replace("-", "_"))


def _cmd_evolve(args) -> int:
    eps = LISTING_STEPS[args.target] if args.paper_epsilon else args.epsilon
    rules = _evolve_rules(args)
    params = EvolutionParams(step_size=eps,
                             record_interval=args.record_interval)
    start = time.perf_counter()
    state, traj = integrate(rules.initial_state(params), rules, params)
    wall = time.perf_counter() - start
    rounds = int(traj.rows[-1][0])
    if args.target == "cut3":
        kind = "cut"
        headline = {"good": float(state.good), "bad": float(state.bad)}
    else:
        kind = "independent"
        headline = {"independent": float(state.independent)}
    parameters = {"target": args.target, "epsilon": eps,
                  "record_interval": args.record_interval}
    if args.target == "is3":
        parameters["improvement"] = not args.no_improvement
    if args.target == "cut3":
        parameters["mode"] = args.mode
    report = RunReport(command=args.command_echo, kind=kind,
                       parameters=parameters, seed=None, headline=headline,
                       rounds=rounds, wall_time_s=round(wall, 3))
    if args.trajectory:
        path = _resolve_out(args.trajectory)
        path.write_text(traj.to_csv())
        print(f"trajectory written to {path}")
    _emit(report, args.json_path)
    return 0


# -- simulate ---------------------------------------------------------------


def _one_simulation(payload):
    """Worker for one finite-graph run; must stay picklable."""
    target, n, d, seed, options = payload
    graph_seed, algo_seed = np.random.SeedSequence(seed).spawn(2)
    graph = generate(n, d, seed=graph_seed)
    if target == "is":
        result = run_is(graph, d, schedule=RoundSchedule(**options),
                        seed=algo_seed)
        return {
            "seed": seed,
            "size": result.size,
            "ratio": result.ratio,
            "rounds": result.rounds,
            "valid": bool(verify_independent(graph, result.vertices)),
        }
    result = run_cut(graph, seed=algo_seed, **options)
    consistent = (result.good == result.incremental_good
                  and result.bad == result.incremental_bad
                  and result.good + result.bad == graph.edge_count)
    return {
        "seed": seed,
        "good": result.good,
        "bad": result.bad,
        "ratio": result.good / result.n,
        "rounds": result.rounds,
        "valid": bool(consistent),
    }


def _witness_text(target: str, n: int, d: int, seed, options: dict) -> str:
    """Re-run one simulation keeping the full output for the witness file."""
    graph_seed, algo_seed = np.random.SeedSequence(seed).spawn(2)
    graph = generate(n, d, seed=graph_seed)
    if target == "is":
        result = run_is(graph, d, schedule=RoundSchedule(**options),
                        seed=algo_seed)
        return "\n".join(str(v) for v in sorted(result.vertices)) + "\n"
    result = run_cut(graph, seed=algo_seed, **options)
    return "\n".join(f"{i} {'RG'[c]}" for i, c in
                     enumerate(result.colors.tolist())) + "\n"


def _cmd_simulate(args) -> int:
    target = args.target
    d = args.d if target == "is" else 3
    if target == "is":
        options = {
            "thin_probability": args.thin_probability,
            "bootstrap_probability": args.bootstrap_probability,
            "persistence_fraction": args.persistence_fraction,
            "stop_fraction": args.stop_fraction,
            "max_rounds": args.max_rounds,
        }
    else:
        options = {
            "query_probability": args.query_probability,
            "stop_fraction": args.stop_fraction,
            "endgame_floor": args.endgame_floor,
            "max_rounds": args.max_rounds,
            "swap": args.swap,
        }
    if args.witness and args.seeds > 1:
        raise ValueError("--witness needs a single run, not --seeds > 1")
    seeds = [args.seed + i for i in range(args.seeds)]
    payloads = [(target, args.n, d, s, options) for s in seeds]
    start = time.perf_counter()
    if len(payloads) == 1:
        runs = [_one_simulation(payloads[0])]
    else:
        workers = min(len(payloads), os.cpu_count() or 1)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_one_simulation, payloads))
    wall = time.perf_counter() - start
    all_valid = all(r["valid"] for r in runs)
    parameters = {"target": target, "n": args.n, "d": d,
                  "seeds": args.seeds, **options}
    kind = "independent" if target == "is" else "cut"
    if len(runs) == 1:
        only = runs[0]
        headline = {k: only[k] for k in ("size", "good", "bad", "ratio")
                    if k in only}
        report = RunReport(command=args.command_echo, kind=kind,
                           parameters=parameters, seed=args.seed,
                           headline=headline, valid=all_valid,
                           rounds=only["rounds"], wall_time_s=round(wall, 3))
    else:
        ratios = [r["ratio"] for r in runs]
        headline = {
            "mean_ratio": statistics.fmean(ratios),
            "stddev_ratio": statistics.stdev(ratios),
            "runs": len(runs),
        }
        report = RunReport(command=args.command_echo, kind=kind,
                           parameters=parameters, seed=args.seed,
                           headline=headline, valid=all_valid,
                           details={"per_seed": runs},
                           wall_time_s=round(wall, 3))
    if args.witness:
        path = _resolve_out(args.witness)
        path.write_text(_witness_text(target, args.n, d, args.seed, options))
        print(f"witness written to {path}")
    _emit(report, args.json_path)
    return 0 if all_valid else 1


# -- oracle -----------------------------------------------------------------


def _cmd_oracle(args) -> int:
    graph = load_edge_list(Path(args.path).read_text())
    small = from_multigraph(graph)
    if args.problem == "mis":
        size, members = max_independent_set(small)
        print(f"maximum independent set: {size}")
        print("witness:", " ".join(str(v) for v in members))
    else:
        weight, side = max_cut(small)
        print(f"maximum cut: {weight}")
        print("witness:", " ".join("RG"[s] for s in side))
    return 0


# -- refine -----------------------------------------------------------------


def _cmd_refine(args) -> int:
    rules = _evolve_rules(args)
    if args.step_sizes:
        ladder = tuple(args.step_sizes)
    else:
        ladder = REFINE_LADDERS[(args.target,
                                 not getattr(args, "no_improvement", False))]
    start = time.perf_counter()
    report = refine(rules.initial_state(EvolutionParams(step_size=ladder[0])),
                    rules, ladder)
    wall = time.perf_counter() - start
    print(f"command: {args.command_echo}")
    print(report.describe())
    print(f"wall time: {wall:.2f}s")
    if args.json_path:
        payload = {
            "command": args.command_echo,
            "step_sizes": list(report.step_sizes),
            "finals": list(report.finals),
            "diffs": list(report.diffs),
            "ratios": list(report.ratios),
            "monotone": report.monotone,
            "wall_time_s": round(wall, 3),
        }
        path = _resolve_out(args.json_path)
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        print(f"report written to {path}")
    return 0


# -- parser -----------------------------------------------------------------


def _add_output_flags(p) -> None:
    p.add_argument("--json", dest="json_path", metavar="PATH",
                   help="write a machine-readable report here")


def _add_evolve_flags(p) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--epsilon", type=float, default=1e-7,
                       help="step size: survival mass removed per round "
                            "(default 1e-7)")
    group.add_argument("--paper-epsilon", action="store_true",
                       help="use the finer reference step size for this "
                            "target")
    p.add_argument("--record-interval", type=int, default=10 ** 6,
                   help="rounds between trajectory samples")
    p.add_argument("--trajectory", metavar="PATH",
                   help="write the sampled trajectory as CSV")
    _add_output_flags(p)


def _add_simulate_flags(p) -> None:
    p.add_argument("--n", type=int, required=True,
                   help="number of vertices")
    p.add_argument("--seed", type=int, default=0,
                   help="base seed; graph and algorithm streams derive "
                        "from it (default 0)")
    p.add_argument("--seeds", type=int, default=1, metavar="K",
                   help="fan out K independent runs (seed, seed+1, ...) "
                        "and aggregate mean/stddev")
    p.add_argument("--stop-fraction", type=float, default=1e-3,
                   help="stop once survival falls below this fraction")
    p.add_argument("--max-rounds", type=int, default=10 ** 6)
    p.add_argument("--witness", metavar="PATH",
                   help="write the certified output (set members or "
                        "coloring) here")
    _add_output_flags(p)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="girthlocal",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    evolve = sub.add_parser(
        "evolve", help="integrate a degree-evolution process")
    evolve_targets = evolve.add_subparsers(dest="target", required=True)
    ev3 = evolve_targets.add_parser(
        "is3", help="independent-set process on 3-regular graphs")
    ev3.add_argument("--no-improvement", action="store_true",
                     help="disable the lone-pair correction term")
    _add_evolve_flags(ev3)
    ev3.set_defaults(func=_cmd_evolve)
    ev4 = evolve_targets.add_parser(
        "is4", help="independent-set process on 4-regular graphs")
    _add_evolve_flags(ev4)
    ev4.set_defaults(func=_cmd_evolve, no_improvement=False)
    evc = evolve_targets.add_parser(
        "cut3", help="red/green/white cut process on 3-regular graphs")
    evc.add_argument("--mode", choices=("closed-form", "linear-solve"),
                     default="closed-form",
                     help="how the per-round action rates are computed")
    _add_evolve_flags(evc)
    evc.set_defaults(func=_cmd_evolve, no_improvement=False)

    simulate = sub.add_parser(
        "simulate", help="run a round algorithm on a random regular graph")
    sim_targets = simulate.add_subparsers(dest="target", required=True)
    sim_is = sim_targets.add_parser("is", help="independent set")
    sim_is.add_argument("--d", type=int, choices=(3, 4), default=3,
                        help="graph degree (default 3)")
    sim_is.add_argument("--thin-probability", type=float, default=0.02)
    sim_is.add_argument("--bootstrap-probability", type=float, default=0.002)
    sim_is.add_argument("--persistence-fraction", type=float, default=0.002)
    _add_simulate_flags(sim_is)
    sim_is.set_defaults(func=_cmd_simulate)
    sim_cut = sim_targets.add_parser("cut", help="red/green cut coloring")
    sim_cut.add_argument("--query-probability", type=float, default=0.02)
    sim_cut.add_argument("--endgame-floor", type=int, default=64)
    sim_cut.add_argument("--swap", action="store_true",
                         help="swap the roles of the two colors")
    _add_simulate_flags(sim_cut)
    sim_cut.set_defaults(func=_cmd_simulate)

    oracle = sub.add_parser(
        "oracle", help="exact optimum for a small edge-list file")
    oracle.add_argument("problem", choices=("mis", "maxcut"))
    oracle.add_argument("path", help="edge-list file ('n m' header, one "
                                     "'u v' pair per line)")
    oracle.set_defaults(func=_cmd_oracle)

    refine_cmd = sub.add_parser(
        "refine", help="compare evolution finals across step sizes")
    refine_targets = refine_cmd.add_subparsers(dest="target", required=True)
    for name in ("is3", "is4", "cut3"):
        rp = refine_targets.add_parser(name)
        if name == "is3":
            rp.add_argument("--no-improvement", action="store_true")
        if name == "cut3":
            rp.add_argument("--mode", choices=("closed-form", "linear-solve"),
                            default="closed-form")
        rp.add_argument("--step-sizes", type=float, nargs="+",
                        metavar="EPS",
                        help="strictly decreasing ladder (default: a known "
                             "in-range ladder for the target)")
        _add_output_flags(rp)
        rp.set_defaults(func=_cmd_refine, no_improvement=False,
                        mode="closed-form")

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = _parser().parse_args(argv)
    args.command_echo = "girthlocal " + " ".join(argv)
    try:
        return args.func(args)
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
