"""M/M/k queue test problem: simulator, Erlang C oracle and objective adapters."""
from .erlang import GridResult, analytic_objective, analytic_wait, erlang_c, grid_search, mu_grid
from .model import QueueModel, WaitMode
from .objective import AnalyticQueueObjective, QueueObjective
from .simulator import objective_sample, simulate_wait, simulate_wait_batch

__all__ = [
    "QueueModel",
    "WaitMode",
    "QueueObjective",
    "AnalyticQueueObjective",
    "erlang_c",
    "analytic_wait",
    "analytic_objective",
    "grid_search",
    "mu_grid",
    "GridResult",
    "simulate_wait",
    "simulate_wait_batch",
    "objective_sample",
]
