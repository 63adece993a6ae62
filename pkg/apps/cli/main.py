"""Command-line entry point.

    teso optimize --config exp.toml --seed 7 --out results/
    teso bench    --config exp.toml --jobs 4
    teso oracle   --wait-mode sojourn --step 0.001
    teso simulate --mu 1.5 --reps 100

Exit status is 0 on success, otherwise the exit code of the raised error.
"""
import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any

import numpy as np

from apps.cli.config import ExperimentConfig, load_experiment, parse_overrides, settings
from apps.cli.output import (
    ensure_dir,
    summary_table,
    write_curve_csv,
    write_summary,
    write_trace_csv,
)
from packages.benchmark.harness import run_suite
from packages.benchmark.variants import AlgorithmSpec, AlgorithmVariant, default_specs
from packages.optimizer.exceptions import ConfigError, StabilityError, TesoError
from packages.optimizer.objective import replication_streams
from packages.optimizer.streams import root_stream
from packages.queue_sim.erlang import analytic_objective, analytic_wait, grid_search, mu_grid
from packages.queue_sim.model import QueueModel, WaitMode
from packages.queue_sim.objective import QueueObjective
from packages.queue_sim.simulator import simulate_wait_batch

logger = logging.getLogger("teso")


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if (verbose or settings.debug) else getattr(
        logging, settings.log_level.upper(), logging.INFO
    )
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        force=True,
    )


def _experiment(args: argparse.Namespace) -> ExperimentConfig:
    """Config file plus command-line overrides."""
    overrides: dict[str, Any] = parse_overrides(args.set or [])
    if args.seed is not None:
        overrides["teso.base_seed"] = args.seed
    if args.wait_mode is not None:
        overrides["queue.wait_mode"] = args.wait_mode
    return load_experiment(args.config, overrides)


def _output_dir(args: argparse.Namespace, config: ExperimentConfig) -> Path:
    chosen = args.out or config.suite.output_dir or settings.output_dir
    return ensure_dir(Path(chosen))


def cmd_optimize(args: argparse.Namespace) -> int:
    config = _experiment(args)
    variant = AlgorithmVariant(args.algorithm)
    spec = AlgorithmSpec.for_variant(variant, config.teso)
    objective = QueueObjective(config.queue)
    out = _output_dir(args, config)

    print(f"# seed={config.seed} algorithm={spec.label} wait_mode={config.queue.wait_mode.value}")
    result = spec.build().run(objective, objective.space, root_stream(config.seed))
    write_trace_csv(result, out / "trace.csv")
    (out / "effective_config.toml").write_text(config.dump_toml(), encoding="utf-8")

    print(f"x_best = {result.x_best}")
    print(f"f_best = {result.f_best!r}")
    print(f"trials_used = {result.trials_used}")
    print(f"evaluations_used = {result.evaluations_used}")
    print(f"terminated_early = {str(result.terminated_early).lower()}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    config = _experiment(args)
    specs = default_specs(config.teso, config.suite.algorithms)
    objective = QueueObjective(config.queue)
    out = _output_dir(args, config)
    jobs = args.jobs or settings.jobs

    print(f"# seed={config.seed} n_macro={config.suite.n_macro} jobs={jobs}")
    summary = run_suite(
        specs,
        objective,
        objective.space,
        n_macro=config.suite.n_macro,
        base_seed=config.seed,
        jobs=jobs,
        last_k=config.suite.last_k,
        last_metric=config.suite.last_metric,
    )
    write_summary(summary, out / "summary.toml")
    for algorithm in summary.algorithms:
        write_curve_csv(algorithm.curve, out / f"convergence_{algorithm.variant.value}.csv")
    (out / "effective_config.toml").write_text(config.dump_toml(), encoding="utf-8")

    print(summary_table(summary))
    failed = sum(a.n_failed for a in summary.algorithms)
    if failed:
        logger.warning("%d macro-replications failed; see the log above", failed)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    config = _experiment(args)
    base = config.queue
    arrival_rate = args.arrival_rate if args.arrival_rate is not None else base.arrival_rate
    k = args.k if args.k is not None else base.k
    cost_c = args.cost_c if args.cost_c is not None else base.cost_c
    lower = args.mu_min if args.mu_min is not None else base.mu_lower
    upper = args.mu_max if args.mu_max is not None else base.mu_upper
    if args.mu is not None:
        lower, upper = min(lower, args.mu), max(upper, args.mu)

    for mu in mu_grid(lower, upper, args.step):
        if k * mu <= arrival_rate:
            raise StabilityError.for_rates(k, float(mu), arrival_rate)
    try:
        model = QueueModel(
            arrival_rate=arrival_rate, k=k, cost_c=cost_c,
            mu_lower=lower, mu_upper=upper, wait_mode=base.wait_mode,
        )
    except ValueError as e:
        raise ConfigError(f"Invalid oracle parameters: {e}") from e

    print(f"# lambda={arrival_rate:g} k={k} cost_c={cost_c:g} wait_mode={model.wait_mode.value}")
    if args.mu is not None:
        print(f"mu = {args.mu!r}")
        print(f"wait = {analytic_wait(model, args.mu)!r}")
        print(f"objective = {analytic_objective(model, args.mu)!r}")
        return 0

    result = grid_search(model, step=args.step)
    if args.print_grid:
        print(result.table.to_csv(index=False, lineterminator="\n"), end="")
    print(f"argmin_mu = {result.argmin!r}")
    print(f"min_objective = {result.minimum!r}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _experiment(args)
    model = config.queue
    streams = list(replication_streams(root_stream(config.seed), args.reps))
    waits = simulate_wait_batch(model, args.mu, streams)
    mean = float(np.mean(waits))
    se = float(np.std(waits, ddof=1) / math.sqrt(waits.size)) if waits.size > 1 else float("nan")
    analytic = analytic_wait(model, args.mu)
    z = (mean - analytic) / se if se and not math.isnan(se) else float("nan")

    print(f"# seed={config.seed} mu={args.mu!r} reps={args.reps} wait_mode={model.wait_mode.value}")
    print(f"simulated_mean = {mean!r}")
    print(f"standard_error = {se!r}")
    print(f"analytic = {analytic!r}")
    print(f"z_score = {z!r}")
    if model.wait_mode is WaitMode.QUEUE:
        print(f"analytic_Lq = {model.arrival_rate * analytic!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Experiment TOML file")
    common.add_argument("--seed", type=int, help="Base seed for all randomness")
    common.add_argument("--jobs", type=int, help="Parallel macro-replications")
    common.add_argument("--out", type=Path, help="Output directory")
    common.add_argument("--wait-mode", choices=[m.value for m in WaitMode])
    common.add_argument(
        "--set", action="append", metavar="SECTION.KEY=VALUE",
        help="Override one config value (repeatable)",
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="teso",
        description="Tabu-enhanced simulation optimization on the M/M/k queue problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    optimize = sub.add_parser("optimize", parents=[common], help="Run one optimization")
    optimize.add_argument(
        "--algorithm", choices=[v.value for v in AlgorithmVariant], default="teso",
    )
    optimize.set_defaults(handler=cmd_optimize)

    bench = sub.add_parser("bench", parents=[common], help="Run the four-algorithm suite")
    bench.set_defaults(handler=cmd_bench)

    oracle = sub.add_parser("oracle", parents=[common], help="Query the Erlang C oracle")
    oracle.add_argument("--lambda", dest="arrival_rate", type=float)
    oracle.add_argument("--k", type=int)
    oracle.add_argument("--cost-c", type=float)
    oracle.add_argument("--mu-min", type=float)
    oracle.add_argument("--mu-max", type=float)
    oracle.add_argument("--step", type=float, default=0.001)
    oracle.add_argument("--mu", type=float, help="Single query instead of a grid")
    oracle.add_argument("--print-grid", action="store_true", help="Print the full (mu, J) grid")
    oracle.set_defaults(handler=cmd_oracle)

    simulate = sub.add_parser(
        "simulate", parents=[common], help="Replicate the simulator at one mu"
    )
    simulate.add_argument("--mu", type=float, required=True)
    simulate.add_argument("--reps", type=int, default=100)
    simulate.set_defaults(handler=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except TesoError as e:
        logger.error("%s", e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception("Unexpected failure: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
