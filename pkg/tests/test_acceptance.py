"""Full-size experimental design on the M/M/3 problem.

These runs take minutes; enable them with ``pytest --runslow``.

Reported final bests are the minimum of noisy means, so every algorithm sits
a little below the analytic optimum; comparisons against J* use the exact
objective at the returned service rate where that bias matters.
"""
import numpy as np
import pytest

from packages.benchmark.harness import run_suite
from packages.benchmark.variants import AlgorithmVariant, default_specs
from packages.optimizer.schemas import TesoConfig
from packages.optimizer.streams import derive, root_stream
from packages.optimizer.teso import run
from packages.queue_sim.erlang import analytic_objective, grid_search
from packages.queue_sim.model import QueueModel
from packages.queue_sim.objective import AnalyticQueueObjective, QueueObjective

pytestmark = pytest.mark.slow

TESO_VARIANTS = (
    AlgorithmVariant.TESO, AlgorithmVariant.TESO_NO_TABU, AlgorithmVariant.TESO_NO_ELITE,
)


@pytest.fixture(scope="module")
def full_suite():
    objective = QueueObjective(QueueModel())
    config = TesoConfig()
    return run_suite(
        default_specs(config), objective, objective.space, n_macro=30, base_seed=config.base_seed,
    )


@pytest.fixture(scope="module")
def optimum():
    return grid_search(QueueModel(), step=0.001)


def test_teso_variants_beat_random_search(full_suite):
    means = {a.variant: a.final_best_mean for a in full_suite.algorithms}
    for variant in TESO_VARIANTS:
        assert means[variant] < means[AlgorithmVariant.PRS]


def test_teso_final_best_near_analytic_optimum(full_suite, optimum):
    teso = full_suite.get(AlgorithmVariant.TESO)
    assert optimum.minimum - 0.06 <= teso.final_best_mean <= 2.65


def test_teso_incumbents_are_near_optimal(full_suite, optimum):
    model = QueueModel()
    exact = [
        analytic_objective(model, m.final_best_x.x[0])
        for m in full_suite.macros
        if m.variant is AlgorithmVariant.TESO
    ]
    assert len(exact) == 30
    assert min(exact) >= optimum.minimum - 1e-3
    assert np.mean(exact) <= 2.65


def test_teso_spread_below_random_search(full_suite):
    spreads = {a.variant: a.final_best_std for a in full_suite.algorithms}
    assert spreads[AlgorithmVariant.TESO] < spreads[AlgorithmVariant.PRS]


def test_teso_convergence_curve(full_suite):
    curve = full_suite.get(AlgorithmVariant.TESO).curve
    values = curve["mean_best"].to_numpy()
    assert np.all(np.diff(values) <= 1e-12)
    assert 2.45 <= values[-1] <= 2.70


def test_sample_budget_respected(full_suite):
    config = TesoConfig()
    assert all(m.samples_used <= config.budget * config.n_rep for m in full_suite.macros)


def _zero_noise_hits(model: QueueModel, config: TesoConfig) -> int:
    target = grid_search(model, step=0.001).argmin
    objective = AnalyticQueueObjective(model)
    hits = 0
    for i in range(30):
        result = run(config, objective, objective.space, derive(root_stream(config.base_seed), i))
        hits += abs(result.x_best.x[0] - target) <= config.bin_width
    return hits


def test_zero_noise_full_budget_finds_grid_optimum(queue_model):
    # dt_max beyond the budget: every run spends all trials and the noise decays to eta_final
    config = TesoConfig(dt_max=TesoConfig().budget)
    assert _zero_noise_hits(queue_model, config) >= 27


def test_zero_noise_with_early_stop(queue_model):
    assert _zero_noise_hits(queue_model, TesoConfig()) >= 24
