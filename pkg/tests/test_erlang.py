"""Erlang C oracle, grid search and the queue model's stability rules."""
import numpy as np
import pytest
from pydantic import ValidationError

from packages.optimizer.exceptions import DomainError, StabilityError
from packages.optimizer.objective import Candidate, evaluate
from packages.optimizer.streams import root_stream
from packages.queue_sim.erlang import (
    analytic_objective,
    analytic_wait,
    erlang_c,
    grid_search,
    mu_grid,
)
from packages.queue_sim.model import QueueModel, WaitMode
from packages.queue_sim.objective import AnalyticQueueObjective


def test_erlang_c_single_server_is_utilisation():
    assert erlang_c(1, 0.5) == pytest.approx(0.5)


def test_erlang_c_mm3():
    assert erlang_c(3, 2.5) == pytest.approx(0.702247, abs=1e-6)


def test_erlang_c_is_increasing_in_load():
    loads = np.linspace(0.1, 2.99, 200)
    values = [erlang_c(3, float(a)) for a in loads]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert erlang_c(3, 2.9999) > 0.999


def test_erlang_c_errors():
    with pytest.raises(ValueError):
        erlang_c(0, 1.0)
    with pytest.raises(ValueError):
        erlang_c(3, 0.0)
    with pytest.raises(StabilityError):
        erlang_c(3, 3.0)


def test_analytic_wait_mm3(queue_model):
    assert analytic_wait(queue_model, 1.5) == pytest.approx(0.14988, abs=1e-5)
    assert analytic_objective(queue_model, 1.5) == pytest.approx(0.14988 + 3.375, abs=1e-5)
    assert analytic_objective(queue_model, 1.12) == pytest.approx(2.531, abs=1e-3)


def test_analytic_wait_mm1():
    model = QueueModel(arrival_rate=0.5, k=1, mu_lower=0.6, mu_upper=2.0)
    assert analytic_wait(model, 1.0) == pytest.approx(1.0)


def test_sojourn_adds_service_time(queue_model):
    sojourn = queue_model.model_copy(update={"wait_mode": WaitMode.SOJOURN})
    assert analytic_wait(sojourn, 1.5) == pytest.approx(analytic_wait(queue_model, 1.5) + 1 / 1.5)


def test_grid_includes_endpoints():
    grid = mu_grid(1.0, 4.0, 0.001)
    assert grid.size == 3001
    assert grid[0] == 1.0 and grid[-1] == 4.0


def test_grid_search_queue_wait(queue_model):
    result = grid_search(queue_model, step=0.001)
    assert 1.10 <= result.argmin <= 1.14
    assert 2.52 <= result.minimum <= 2.54
    assert list(result.table.columns) == ["mu", "objective"]
    assert len(result.table) == 3001


def test_grid_search_sojourn(queue_model):
    sojourn = queue_model.model_copy(update={"wait_mode": WaitMode.SOJOURN})
    result = grid_search(sojourn, step=0.001)
    assert result.argmin == pytest.approx(1.15, abs=0.02)
    assert result.minimum == pytest.approx(3.41, abs=0.02)


def test_analytic_objective_is_unimodal(queue_model):
    values = grid_search(queue_model, step=0.01).table["objective"].to_numpy()
    signs = np.sign(np.diff(values))
    assert np.count_nonzero(np.diff(signs) != 0) == 1


def test_grid_search_rejects_unstable_range(queue_model):
    with pytest.raises(StabilityError):
        grid_search(queue_model, step=0.01, lower=0.5)


def test_model_rejects_unstable_bounds():
    with pytest.raises(ValidationError, match="Stability rule"):
        QueueModel(mu_lower=0.8)
    with pytest.raises(ValidationError):
        QueueModel(mu_lower=2.0, mu_upper=1.5)


def test_model_accepts_lambda_alias():
    assert QueueModel.model_validate({"lambda": 2.0}).arrival_rate == 2.0


def test_check_mu_order(queue_model):
    with pytest.raises(StabilityError) as exc:
        queue_model.check_mu(0.8)
    assert exc.value.exit_code == 3
    with pytest.raises(DomainError) as exc:
        queue_model.check_mu(4.5)
    assert exc.value.exit_code == 2
    with pytest.raises(StabilityError):
        QueueModel(arrival_rate=3.0, mu_lower=1.5).check_mu(1.0)


def test_analytic_objective_as_zero_noise_model(queue_model):
    model = AnalyticQueueObjective(queue_model)
    ev = evaluate(model, Candidate.of(1.5), 4, root_stream(0))
    assert ev.mean == pytest.approx(analytic_objective(queue_model, 1.5))
    assert ev.std == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(StabilityError):
        model.sample(Candidate.of(0.8), root_stream(0))


def test_model_cost(queue_model):
    assert queue_model.cost(1.5) == pytest.approx(3.375)
    assert queue_model.utilisation(1.0) == pytest.approx(2.5 / 3)
