"""Closed-form M/M/k oracle (Erlang C) and grid search over the service rate."""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from packages.optimizer.exceptions import StabilityError

from .model import QueueModel, WaitMode

logger = logging.getLogger(__name__)


def erlang_c(k: int, a: float) -> float:
    """Probability an arriving customer waits, for k servers and offered load a = lambda/mu."""
    if k < 1:
        raise ValueError("k must be positive")
    if a <= 0:
        raise ValueError("offered load must be > 0")
    rho = a / k
    if rho >= 1.0:
        raise StabilityError(k, rho)
    term = 1.0  # a^n / n!
    head = 0.0
    for n in range(k):
        head += term
        term *= a / (n + 1)
    tail = term / (1.0 - rho)
    return tail / (head + tail)


def analytic_wait(model: QueueModel, mu: float) -> float:
    """Steady-state mean queue delay Wq, plus 1/mu in sojourn mode."""
    model.check_stable(mu)
    wq = erlang_c(model.k, model.arrival_rate / mu) / (model.k * mu - model.arrival_rate)
    if model.wait_mode is WaitMode.SOJOURN:
        return wq + 1.0 / mu
    return wq


def analytic_objective(model: QueueModel, mu: float) -> float:
    """Exact J(mu): analytic mean wait plus capacity cost."""
    return analytic_wait(model, mu) + model.cost(mu)


@dataclass(frozen=True)
class GridResult:
    """Analytic objective tabulated over a mu grid."""
    table: pd.DataFrame  # columns: mu, objective
    argmin: float
    minimum: float


def mu_grid(lower: float, upper: float, step: float) -> np.ndarray:
    """Evenly spaced grid including both endpoints."""
    if step <= 0:
        raise ValueError("step must be > 0")
    if upper < lower:
        raise ValueError("upper must be >= lower")
    n = int(round((upper - lower) / step)) + 1
    return np.linspace(lower, upper, n)


def grid_search(
    model: QueueModel,
    step: float = 0.001,
    lower: float | None = None,
    upper: float | None = None,
) -> GridResult:
    """Exhaustive scan of the analytic objective; the first unstable mu aborts the scan."""
    grid = mu_grid(model.mu_lower if lower is None else lower,
                   model.mu_upper if upper is None else upper, step)
    for mu in grid:
        model.check_stable(float(mu))
    values = np.array([analytic_objective(model, float(mu)) for mu in grid])
    best = int(np.argmin(values))
    logger.debug("Grid of %d points, argmin mu=%.6g, J=%.6g", grid.size, grid[best], values[best])
    return GridResult(
        table=pd.DataFrame({"mu": grid, "objective": values}),
        argmin=float(grid[best]),
        minimum=float(values[best]),
    )
