"""Pytest fixtures shared by the optimizer, simulator, harness and CLI tests.

Queue fixtures use short replications so the fast suite stays fast; the
full-size experimental design only runs under ``--runslow``.
"""
import numpy as np
import pytest

from packages.optimizer.objective import DecisionSpace, FunctionObjective
from packages.optimizer.schemas import TesoConfig
from packages.queue_sim.model import QueueModel


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="Run full-size acceptance tests",
    )


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def quadratic(x: np.ndarray) -> float:
    """(x - 2)^2 summed over coordinates; minimum 0 at x = 2."""
    return float(np.sum((x - 2.0) ** 2))


@pytest.fixture
def space() -> DecisionSpace:
    """[0, 4] box."""
    return DecisionSpace.box(0.0, 4.0)


@pytest.fixture
def quadratic_objective(space: DecisionSpace) -> FunctionObjective:
    """Zero-noise quadratic."""
    return FunctionObjective(quadratic, space)


@pytest.fixture
def noisy_quadratic(space: DecisionSpace) -> FunctionObjective:
    """Quadratic plus N(0, 0.5^2) noise."""
    return FunctionObjective(quadratic, space, noise_std=0.5)


@pytest.fixture
def small_config() -> TesoConfig:
    """Short run: 60 trials, 5 replications, pilot of 2."""
    return TesoConfig(budget=60, n_init=10, n_rep=5, pilot_reps=2, dt_max=30)


@pytest.fixture
def queue_model() -> QueueModel:
    """Default M/M/3 problem."""
    return QueueModel()


@pytest.fixture
def short_queue_model() -> QueueModel:
    """M/M/3 problem with short replications, for smoke runs."""
    return QueueModel(customers_per_rep=200, warmup_customers=50)
