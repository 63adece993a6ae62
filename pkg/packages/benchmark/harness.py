"""Macro-replicated comparison of the algorithms on one objective."""
import logging
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from enum import Enum

import numpy as np
import pandas as pd

from packages.optimizer.base import OptimizationResult
from packages.optimizer.exceptions import OptimizationError
from packages.optimizer.objective import DecisionSpace, StochasticObjective
from packages.optimizer.streams import Stream, derive, root_stream

from .convergence import convergence_curve
from .results import AlgorithmSummary, MacroResult, SuiteSummary
from .variants import AlgorithmSpec, AlgorithmVariant

logger = logging.getLogger(__name__)


class LastMetric(str, Enum):
    """What the tail-average metric averages."""
    EVALUATED_MEANS = "evaluated_means"  # candidate means of the last k evaluated trials
    BEST_SO_FAR = "best_so_far"          # incumbent value over the last k trials


def tail_average(result: OptimizationResult, last_k: int, metric: LastMetric) -> float:
    values = result.evaluated_means if metric is LastMetric.EVALUATED_MEANS else result.best_so_far
    if not values:
        return float("nan")
    return float(np.mean(values[-last_k:]))


def run_macro(
    spec: AlgorithmSpec,
    model: StochasticObjective,
    space: DecisionSpace,
    macro_index: int,
    suite_stream: Stream,
    last_k: int = 50,
    last_metric: LastMetric = LastMetric.EVALUATED_MEANS,
) -> MacroResult:
    """One macro-replication; failures are captured in the result instead of raised."""
    stream = derive(suite_stream, macro_index)
    start = time.perf_counter()
    try:
        result = spec.build().run(model, space, stream)
    except Exception as e:
        logger.warning("%s macro %d failed: %s", spec.label, macro_index, e)
        return MacroResult(
            variant=spec.variant,
            macro_index=macro_index,
            wall_time_seconds=time.perf_counter() - start,
            error=f"{type(e).__name__}: {e}",
        )
    return MacroResult(
        variant=spec.variant,
        macro_index=macro_index,
        final_best_mean=result.f_best,
        final_best_x=result.x_best,
        avg_last=tail_average(result, last_k, last_metric),
        wall_time_seconds=time.perf_counter() - start,
        trace=result.best_so_far,
        trials_used=result.trials_used,
        evaluations_used=result.evaluations_used,
        samples_used=result.samples_used,
        skipped_tabu=result.skipped_tabu,
        intensify_fraction=result.intensify_fraction,
        terminated_early=result.terminated_early,
    )


def _spread(values: np.ndarray) -> float | None:
    return float(np.std(values, ddof=1)) if values.size > 1 else None


def summarize(variant: AlgorithmVariant, macros: Sequence[MacroResult], T: int) -> AlgorithmSummary:
    """Aggregate the macros of one algorithm (already sorted by macro index)."""
    ok = [m for m in macros if m.ok]
    finals = np.array([m.final_best_mean for m in ok])
    tails = np.array([m.avg_last for m in ok])
    if ok:
        curve = convergence_curve(ok, T)
    else:
        curve = pd.DataFrame({"t": [], "mean_best": [], "se": []})

    def mean_of(attr: str) -> float:
        return float(np.mean([getattr(m, attr) for m in ok])) if ok else float("nan")

    return AlgorithmSummary(
        variant=variant,
        n_macro=len(ok),
        n_failed=len(macros) - len(ok),
        final_best_mean=float(np.mean(finals)) if ok else float("nan"),
        final_best_std=_spread(finals),
        avg_last_mean=float(np.mean(tails)) if ok else float("nan"),
        avg_last_std=_spread(tails),
        wall_time_mean=mean_of("wall_time_seconds"),
        mean_evaluations=mean_of("evaluations_used"),
        mean_samples=mean_of("samples_used"),
        mean_skipped_tabu=mean_of("skipped_tabu"),
        mean_intensify_fraction=mean_of("intensify_fraction"),
        early_terminated=sum(m.terminated_early for m in ok),
        curve=curve,
    )


def run_suite(
    specs: Sequence[AlgorithmSpec],
    model: StochasticObjective,
    space: DecisionSpace,
    n_macro: int,
    base_seed: int,
    jobs: int = 1,
    last_k: int = 50,
    last_metric: LastMetric = LastMetric.EVALUATED_MEANS,
) -> SuiteSummary:
    """Run every spec ``n_macro`` times and aggregate.

    Macro ``i`` of every algorithm uses the stream derived from
    (base_seed, i), so algorithms face common random numbers and results do
    not depend on the schedule.
    """
    if n_macro < 1:
        raise OptimizationError("n_macro must be >= 1", {"n_macro": n_macro})
    if not specs:
        raise OptimizationError("No algorithms to run")
    suite_stream = root_stream(base_seed)
    tasks = [(s, i) for s in range(len(specs)) for i in range(n_macro)]
    logger.info(
        "Running %d algorithms x %d macros (seed=%d, jobs=%d)",
        len(specs), n_macro, base_seed, jobs,
    )

    results: dict[tuple[int, int], MacroResult] = {}
    if jobs <= 1:
        for s, i in tasks:
            results[(s, i)] = run_macro(
                specs[s], model, space, i, suite_stream, last_k, last_metric
            )
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {
                (s, i): executor.submit(
                    run_macro, specs[s], model, space, i, suite_stream, last_k, last_metric
                )
                for s, i in tasks
            }
            results = {key: future.result() for key, future in futures.items()}

    summaries: list[AlgorithmSummary] = []
    macros: list[MacroResult] = []
    for s, spec in enumerate(specs):
        per_spec = sorted((results[(s, i)] for i in range(n_macro)), key=lambda m: m.macro_index)
        macros.extend(per_spec)
        summary = summarize(spec.variant, per_spec, spec.config.budget)
        summaries.append(summary)
        logger.info(
            "%s: final best %.4f (std %s) over %d macros, %d failed",
            spec.label, summary.final_best_mean,
            "n/a" if summary.final_best_std is None else f"{summary.final_best_std:.4f}",
            summary.n_macro, summary.n_failed,
        )
    return SuiteSummary(
        base_seed=base_seed,
        n_macro=n_macro,
        budget=max(spec.config.budget for spec in specs),
        algorithms=summaries,
        macros=macros,
    )
