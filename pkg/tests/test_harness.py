"""Benchmark harness: variants, macro-replications, aggregation and convergence curves."""
import math

import numpy as np
import pytest

from packages.benchmark.convergence import convergence_curve, pad_trace
from packages.benchmark.harness import LastMetric, run_macro, run_suite, tail_average
from packages.benchmark.results import MacroResult
from packages.benchmark.variants import AlgorithmSpec, AlgorithmVariant, default_specs
from packages.optimizer.exceptions import OptimizationError
from packages.optimizer.objective import CountingObjective, FunctionObjective
from packages.optimizer.random_search import RandomSearchOptimizer, run_prs
from packages.optimizer.schemas import TesoConfig
from packages.optimizer.streams import derive, root_stream
from packages.optimizer.teso import TesoOptimizer
from packages.queue_sim.objective import QueueObjective


def failing(x: np.ndarray) -> float:
    raise RuntimeError("replication failed")


@pytest.fixture
def tiny_config() -> TesoConfig:
    return TesoConfig(budget=30, n_init=5, n_rep=3, pilot_reps=1, dt_max=10)


def drop_wall_time(summary):
    """Suite contents minus hardware-dependent timings."""
    return [
        (m.variant, m.macro_index, m.final_best_mean, m.final_best_x, m.avg_last, m.trace)
        for m in summary.macros
    ]


# Variants


def test_default_specs_order(tiny_config):
    labels = [spec.label for spec in default_specs(tiny_config)]
    assert labels == ["PRS", "TESO-noElite", "TESO-noTabu", "TESO"]


def test_variant_switches(tiny_config):
    no_tabu = AlgorithmSpec.for_variant(AlgorithmVariant.TESO_NO_TABU, tiny_config)
    no_elite = AlgorithmSpec.for_variant(AlgorithmVariant.TESO_NO_ELITE, tiny_config)
    assert no_tabu.config.disable_tabu and not no_tabu.config.disable_elite
    assert no_elite.config.disable_elite and not no_elite.config.disable_tabu
    assert isinstance(no_tabu.build(), TesoOptimizer)
    prs = AlgorithmSpec.for_variant(AlgorithmVariant.PRS, tiny_config)
    assert isinstance(prs.build(), RandomSearchOptimizer)


def test_spec_checks_ablation_flags(tiny_config):
    with pytest.raises(ValueError):
        AlgorithmSpec(AlgorithmVariant.TESO_NO_TABU, tiny_config)
    with pytest.raises(ValueError):
        AlgorithmSpec(AlgorithmVariant.TESO_NO_ELITE, tiny_config)


# Convergence curves


def test_pad_trace():
    assert pad_trace([3.0, 2.0], 4) == [3.0, 2.0, 2.0, 2.0]
    assert pad_trace([3.0, 2.0, 1.0], 2) == [3.0, 2.0]
    with pytest.raises(OptimizationError):
        pad_trace([], 3)


def test_convergence_curve_pads_and_averages():
    results = [
        MacroResult(variant=AlgorithmVariant.TESO, macro_index=0, trace=[3.0, 2.0, 1.0]),
        MacroResult(variant=AlgorithmVariant.TESO, macro_index=1, trace=[4.0, 2.0]),
    ]
    curve = convergence_curve(results, 3)
    assert list(curve.columns) == ["t", "mean_best", "se"]
    assert curve["t"].tolist() == [1, 2, 3]
    assert curve["mean_best"].tolist() == pytest.approx([3.5, 2.0, 1.5])
    assert curve["se"].tolist() == pytest.approx([0.5, 0.0, 0.5])


def test_convergence_curve_single_macro_has_zero_se():
    results = [MacroResult(variant=AlgorithmVariant.TESO, macro_index=0, trace=[2.0, 1.0])]
    assert convergence_curve(results, 2)["se"].tolist() == [0.0, 0.0]


def test_convergence_curve_needs_results():
    with pytest.raises(OptimizationError):
        convergence_curve([], 10)


# Macro-replications and suites


def test_tail_average(noisy_quadratic, space, tiny_config):
    result = run_prs(tiny_config, noisy_quadratic, space, root_stream(0))
    assert tail_average(result, 5, LastMetric.EVALUATED_MEANS) == pytest.approx(
        np.mean(result.evaluated_means[-5:])
    )
    assert tail_average(result, 5, LastMetric.BEST_SO_FAR) == pytest.approx(
        np.mean(result.best_so_far[-5:])
    )


def test_macro_uses_derived_stream(noisy_quadratic, space, tiny_config):
    spec = AlgorithmSpec.for_variant(AlgorithmVariant.PRS, tiny_config)
    macro = run_macro(spec, noisy_quadratic, space, 2, root_stream(9))
    direct = run_prs(tiny_config, noisy_quadratic, space, derive(root_stream(9), 2))
    assert macro.ok
    assert macro.final_best_mean == direct.f_best
    assert macro.trace == direct.best_so_far


def test_macro_captures_failures(space, tiny_config):
    spec = AlgorithmSpec.for_variant(AlgorithmVariant.TESO, tiny_config)
    macro = run_macro(spec, FunctionObjective(failing, space), space, 0, root_stream(0))
    assert not macro.ok
    assert "replication failed" in macro.error


def test_suite_summary(noisy_quadratic, space, tiny_config):
    summary = run_suite(default_specs(tiny_config), noisy_quadratic, space, n_macro=3, base_seed=1)
    assert [a.label for a in summary.algorithms] == ["PRS", "TESO-noElite", "TESO-noTabu", "TESO"]
    assert len(summary.macros) == 12
    for algorithm in summary.algorithms:
        assert algorithm.n_macro == 3 and algorithm.n_failed == 0
        assert algorithm.final_best_std is not None
        assert len(algorithm.curve) == tiny_config.budget
        assert np.all(np.diff(algorithm.curve["mean_best"].to_numpy()) <= 1e-12)
        assert algorithm.curve["mean_best"].iloc[-1] == pytest.approx(algorithm.final_best_mean)
    prs = summary.get(AlgorithmVariant.PRS)
    assert prs.early_terminated == 0
    assert prs.mean_evaluations == tiny_config.budget


def test_suite_is_deterministic(noisy_quadratic, space, tiny_config):
    a = run_suite(default_specs(tiny_config), noisy_quadratic, space, n_macro=2, base_seed=5)
    b = run_suite(default_specs(tiny_config), noisy_quadratic, space, n_macro=2, base_seed=5)
    assert drop_wall_time(a) == drop_wall_time(b)


def test_parallel_suite_matches_serial(short_queue_model):
    objective = QueueObjective(short_queue_model)
    config = TesoConfig(budget=12, n_init=4, n_rep=2, pilot_reps=1)
    specs = default_specs(config, [AlgorithmVariant.PRS, AlgorithmVariant.TESO])
    serial = run_suite(specs, objective, objective.space, n_macro=3, base_seed=3, jobs=1)
    parallel = run_suite(specs, objective, objective.space, n_macro=3, base_seed=3, jobs=2)
    assert drop_wall_time(serial) == drop_wall_time(parallel)


def test_single_macro_flags_spread(noisy_quadratic, space, tiny_config):
    specs = default_specs(tiny_config, [AlgorithmVariant.TESO])
    summary = run_suite(specs, noisy_quadratic, space, n_macro=1, base_seed=0)
    teso = summary.get(AlgorithmVariant.TESO)
    assert teso.final_best_std is None
    assert teso.avg_last_std is None
    assert teso.final_best_mean == summary.macros[0].final_best_mean


def test_failed_macros_are_excluded(space, tiny_config):
    specs = default_specs(tiny_config, [AlgorithmVariant.TESO])
    summary = run_suite(specs, FunctionObjective(failing, space), space, n_macro=2, base_seed=0)
    teso = summary.algorithms[0]
    assert teso.n_failed == 2 and teso.n_macro == 0
    assert math.isnan(teso.final_best_mean)
    assert teso.curve.empty


def test_suite_rejects_empty_design(noisy_quadratic, space, tiny_config):
    with pytest.raises(OptimizationError):
        run_suite(default_specs(tiny_config), noisy_quadratic, space, n_macro=0, base_seed=0)
    with pytest.raises(OptimizationError):
        run_suite([], noisy_quadratic, space, n_macro=1, base_seed=0)


def test_sample_budget_per_macro(noisy_quadratic, space, tiny_config):
    counter = CountingObjective(noisy_quadratic)
    spec = AlgorithmSpec.for_variant(AlgorithmVariant.TESO, tiny_config)
    macro = run_macro(spec, counter, space, 0, root_stream(4))
    assert counter.count == macro.samples_used
    assert counter.count <= tiny_config.budget * tiny_config.n_rep
