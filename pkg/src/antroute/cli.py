"""Command-line frontend for roadmap generation, solving, and experiments.

Subcommands: generate, solve, dynamics, sweep, compare, corpus, predict.
Every flag mirrors a library parameter of the owning module. All
randomness flows from explicit --seed style flags whose defaults are
fixed constants, so identical invocations produce byte-identical files
and stdout. Exit status is 0 on success, 1 on domain errors (bad files,
singular parameters, unreachable destinations), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import dynamics, harness, mmas, oracle, predictor, roadmap

_CONFIG_FLAGS = (
    ("alpha", float),
    ("beta", float),
    ("rho", float),
    ("q0", float),
    ("num_ants", int),
    ("deposition", str),
    ("time_constant", float),
    ("time_index", str),
    ("tau_min", str),
    ("tau_max", str),
    ("use_best_so_far_every", int),
    ("stagnation_window", int),
    ("max_iterations", int),
)


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pair(text: str) -> tuple[float, float]:
    values = _float_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected lo,hi - got {text!r}")
    return (values[0], values[1])


def _add_config_flags(p: argparse.ArgumentParser, skip: tuple[str, ...] = ()) -> None:
    p.add_argument("--config", help="key=value file of engine parameters; explicit flags win")
    for name, kind in _CONFIG_FLAGS:
        if name in skip:
            continue
        flag = "--" + name.replace("_", "-")
        if name in ("tau_min", "tau_max"):
            p.add_argument(flag, type=str, default=None, metavar="VALUE|auto",
                           help=f"engine parameter {name} (auto = derived bounds)")
        elif name == "deposition":
            p.add_argument(flag, choices=[mmas.CONSTANT, mmas.EXPONENTIAL], default=None,
                           help="pheromone deposition rule")
        elif name == "time_index":
            p.add_argument(flag, choices=[mmas.HOP, mmas.ITERATION], default=None,
                           help="time index mode of the exponential rule")
        else:
            p.add_argument(flag, type=kind, default=None, help=f"engine parameter {name}")


def _build_config(args: argparse.Namespace, skip: tuple[str, ...] = ()) -> mmas.MmasConfig:
    cfg = mmas.MmasConfig()
    if getattr(args, "config", None):
        cfg = mmas.load_config(args.config, cfg)
    overrides = {}
    for name, _ in _CONFIG_FLAGS:
        if name in skip:
            continue
        value = getattr(args, name, None)
        if value is None:
            continue
        if name in ("tau_min", "tau_max"):
            overrides[name] = None if value == "auto" else float(value)
        else:
            overrides[name] = value
    return replace(cfg, **overrides) if overrides else cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antroute",
        description="Ant-colony shortest-path search on roadmaps: generation, "
        "solving, trail dynamics, parameter sweeps, and prediction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a random connected roadmap file")
    p.add_argument("--cities", type=int, required=True, help="number of cities (>= 2)")
    p.add_argument("--width", type=float, default=harness.DEFAULT_CORPUS_WIDTH,
                   help="placement rectangle width")
    p.add_argument("--height", type=float, default=harness.DEFAULT_CORPUS_HEIGHT,
                   help="placement rectangle height")
    p.add_argument("--radius", type=float, default=harness.DEFAULT_CORPUS_RADIUS,
                   help="connection radius")
    p.add_argument("--seed", type=int, default=0, help="placement seed (default 0)")
    p.add_argument("--out", required=True, help="output roadmap path")

    p = sub.add_parser("solve", help="run the ant-system solver on a roadmap")
    p.add_argument("--map", required=True, help="roadmap file")
    p.add_argument("--seed", type=int, default=0, help="run seed (default 0)")
    p.add_argument("--trace", help="write per-iteration CSV trace here")
    p.add_argument("--show-optimum", action="store_true",
                   help="also print the exact shortest-path length")
    _add_config_flags(p)

    p = sub.add_parser("dynamics", help="emit discrete vs closed-form trail traces")
    p.add_argument("--rho", type=float, required=True, help="evaporation rate")
    p.add_argument("--T", type=float, default=None,
                   help="time constant (required by the exponential rule)")
    p.add_argument("--tau0", type=float, default=0.0, help="initial trail level")
    p.add_argument("--deposits", type=_float_list, default=[1.0],
                   help="comma-separated per-ant deposit constants")
    p.add_argument("--rule", choices=[dynamics.CONSTANT, dynamics.EXPONENTIAL],
                   default=None,
                   help="deposition rule (default: exponential when --T is given, "
                        "constant otherwise)")
    p.add_argument("--steps", type=int, default=200, help="number of time steps")
    p.add_argument("--out", required=True, help="output CSV path (t,discrete,closed_form)")

    p = sub.add_parser("sweep", help="grid-sweep alpha/beta on one roadmap")
    p.add_argument("--map", required=True, help="roadmap file")
    p.add_argument("--alphas", type=_float_list,
                   default=list(harness.DEFAULT_ALPHA_VALUES), help="alpha axis")
    p.add_argument("--betas", type=_float_list,
                   default=list(harness.DEFAULT_BETA_VALUES), help="beta axis")
    p.add_argument("--seeds", type=_int_list, default=[1, 2, 3, 4, 5], help="run seeds")
    p.add_argument("--tol", type=float, default=0.0, help="convergence tolerance")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--json-out", help="optional JSON mirror path")
    _add_config_flags(p, skip=("alpha", "beta"))

    p = sub.add_parser("compare", help="paired constant-vs-exponential comparison")
    p.add_argument("--map", required=True, help="roadmap file")
    p.add_argument("--seeds", type=_int_list, default=[1, 2, 3, 4, 5], help="run seeds")
    p.add_argument("--tol", type=float, default=0.0, help="convergence tolerance")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--json-out", help="optional JSON mirror path")
    _add_config_flags(p, skip=("deposition",))

    p = sub.add_parser("corpus", help="feature/best-parameter table over generated roadmaps")
    p.add_argument("--counts", type=_int_list, required=True, help="city counts")
    p.add_argument("--distributions", type=int, default=1,
                   help="roadmaps generated per count")
    p.add_argument("--seeds", type=_int_list, default=[1, 2, 3], help="run seeds")
    p.add_argument("--alphas", type=_float_list,
                   default=list(harness.DEFAULT_ALPHA_VALUES), help="alpha axis")
    p.add_argument("--betas", type=_float_list,
                   default=list(harness.DEFAULT_BETA_VALUES), help="beta axis")
    p.add_argument("--width", type=float, default=harness.DEFAULT_CORPUS_WIDTH,
                   help="placement rectangle width")
    p.add_argument("--height", type=float, default=harness.DEFAULT_CORPUS_HEIGHT,
                   help="placement rectangle height")
    p.add_argument("--radius", type=float, default=harness.DEFAULT_CORPUS_RADIUS,
                   help="connection radius")
    p.add_argument("--map-seed-base", type=int, default=0,
                   help="base seed for roadmap generation (default 0)")
    p.add_argument("--tol", type=float, default=0.0, help="convergence tolerance")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--json-out", help="optional JSON mirror path")
    _add_config_flags(p, skip=("alpha", "beta"))

    p = sub.add_parser("predict", help="recommend (alpha, beta) from roadmap features")
    p.add_argument("--map", help="roadmap file to extract features from")
    p.add_argument("--density", type=float,
                   help="node density (nodes per 200 square units), instead of --map")
    p.add_argument("--stddev", type=float,
                   help="min-arc stddev, required with --density")
    p.add_argument("--alpha-table", help="coefficient file replacing the bundled alpha fit")
    p.add_argument("--beta-table", help="coefficient file replacing the bundled beta fit")
    p.add_argument("--x-scaling", type=_pair, default=None,
                   help="lo,hi interval mapping x to [-1, 1]")
    p.add_argument("--alpha-y-scaling", type=_pair, default=None,
                   help="lo,hi interval for the alpha model's ln(y)")
    p.add_argument("--beta-y-scaling", type=_pair, default=None,
                   help="lo,hi interval for the beta model's y")

    return parser


def _cmd_generate(args) -> int:
    g = roadmap.generate_roadmap(args.cities, args.width, args.height, args.radius, args.seed)
    roadmap.save_roadmap(g, args.out)
    features = roadmap.compute_features(g)
    print(f"cities={len(g.cities)} edges={len(g.edges)} source={g.source} "
          f"destination={g.destination}")
    print(f"node_density={features.node_density!r} min_arc_stddev={features.min_arc_stddev!r}")
    return 0


def _cmd_solve(args) -> int:
    g = roadmap.load_roadmap(args.map)
    cfg = _build_config(args)
    trace = mmas.run(g, cfg, args.seed)
    if args.trace:
        mmas.write_trace_csv(trace, args.trace)
    if trace.best is None:
        print("best_length=none")
    else:
        print(f"best_length={trace.best.length!r}")
        print("best_nodes=" + " ".join(str(v) for v in trace.best.nodes))
    print(f"iterations={len(trace.records)} construction_failures={trace.construction_failures}")
    if args.show_optimum:
        opt = oracle.shortest_path(g, g.source, g.destination)
        print(f"optimum_length={opt.length!r}")
    return 0


def _cmd_dynamics(args) -> int:
    rule = args.rule
    if rule is None:
        rule = dynamics.EXPONENTIAL if args.T is not None else dynamics.CONSTANT
    if rule == dynamics.EXPONENTIAL and args.T is None:
        raise ValueError("the exponential rule requires --T")
    if args.steps < 1:
        raise ValueError(f"--steps must be >= 1, got {args.steps}")
    params = dynamics.DynamicsParams(
        tau0=args.tau0, rho=args.rho, deposits=tuple(args.deposits), time_constant=args.T
    )
    disc = dynamics.discrete_trace(params, rule, args.steps)
    lines = ["t,discrete,closed_form"]
    for t in range(1, args.steps + 1):
        closed = float(dynamics.closed_form(params, rule, float(t)))
        lines.append(f"{t},{float(disc[t - 1])!r},{closed!r}")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"verdict={dynamics.stability_verdict(args.rho, args.T)}")
    print(f"steady_state={dynamics.steady_state(params)!r}")
    return 0


def _cmd_sweep(args) -> int:
    g = roadmap.load_roadmap(args.map)
    cfg = _build_config(args, skip=("alpha", "beta"))
    grid = harness.sweep(g, cfg, args.alphas, args.betas, args.seeds,
                         tol=args.tol, jobs=args.jobs, roadmap_id=args.map)
    harness.write_sweep_csv(grid, args.out)
    if args.json_out:
        harness.write_sweep_json(grid, args.json_out)
    best = grid.best_cell
    print(f"best_alpha={best.alpha!r} best_beta={best.beta!r} "
          f"median_length={best.median_length!r} median_convergence={best.median_convergence!r}")
    return 0


def _cmd_compare(args) -> int:
    g = roadmap.load_roadmap(args.map)
    base = _build_config(args, skip=("deposition",))
    cfg_constant = replace(base, deposition=mmas.CONSTANT)
    cfg_exponential = replace(base, deposition=mmas.EXPONENTIAL)
    report = harness.compare_rules(g, cfg_constant, cfg_exponential, args.seeds,
                                   tol=args.tol, jobs=args.jobs)
    harness.write_comparison_csv(report, args.out)
    if args.json_out:
        harness.write_comparison_json(report, args.json_out)
    print(f"optimum={report.optimum!r}")
    for rule in (mmas.CONSTANT, mmas.EXPONENTIAL):
        print(f"{rule}: median_final={report.median_final[rule]!r} "
              f"median_convergence={report.median_convergence[rule]!r} "
              f"success_rate={report.success_rate[rule]!r}")
    print(f"fraction_exponential_earlier={report.fraction_exponential_earlier!r}")
    return 0


def _cmd_corpus(args) -> int:
    cfg = _build_config(args, skip=("alpha", "beta"))
    rows = harness.corpus_study(
        args.counts, args.distributions, cfg, args.seeds,
        alpha_values=args.alphas, beta_values=args.betas,
        width=args.width, height=args.height, radius=args.radius,
        map_seed_base=args.map_seed_base, tol=args.tol, jobs=args.jobs,
    )
    harness.write_corpus_csv(rows, args.out)
    if args.json_out:
        harness.write_corpus_json(rows, args.json_out)
    print(f"rows={len(rows)}")
    return 0


def _cmd_predict(args) -> int:
    if args.map is not None:
        if args.density is not None or args.stddev is not None:
            raise ValueError("give either --map or --density/--stddev, not both")
        g = roadmap.load_roadmap(args.map)
        features = roadmap.compute_features(g)
    else:
        if args.density is None or args.stddev is None:
            raise ValueError("need --map, or both --density and --stddev")
        features = roadmap.RoadmapFeatures(args.density, args.stddev)

    alpha_model = predictor.ALPHA_MODEL
    beta_model = predictor.BETA_MODEL
    if args.alpha_table:
        alpha_model = predictor.load_fit_model(args.alpha_table, predictor.CHEBYSHEV)
    if args.beta_table:
        beta_model = predictor.load_fit_model(args.beta_table, predictor.SIGMOID)
    if args.x_scaling:
        alpha_model = replace(alpha_model, x_scaling=args.x_scaling)
        beta_model = replace(beta_model, x_scaling=args.x_scaling)
    if args.alpha_y_scaling:
        alpha_model = replace(alpha_model, y_scaling=args.alpha_y_scaling)
    if args.beta_y_scaling:
        beta_model = replace(beta_model, y_scaling=args.beta_y_scaling)

    rec = predictor.recommend_parameters(features, alpha_model, beta_model)
    print(f"node_density={features.node_density!r} min_arc_stddev={features.min_arc_stddev!r}")
    print(f"alpha={rec.alpha!r}")
    print(f"beta={rec.beta!r}")
    print("flags=" + (",".join(rec.flags) if rec.flags else "none"))
    print(f"alpha_x_scaling={rec.alpha_eval.x_scaling!r} alpha_y_scaling={rec.alpha_eval.y_scaling!r}")
    print(f"beta_x_scaling={rec.beta_eval.x_scaling!r} beta_y_scaling={rec.beta_eval.y_scaling!r}")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "solve": _cmd_solve,
    "dynamics": _cmd_dynamics,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "corpus": _cmd_corpus,
    "predict": _cmd_predict,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse encodes usage errors (and --help) here
        return int(exc.code) if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_main()
