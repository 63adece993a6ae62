"""The M/M/k problem as a stochastic objective over the service rate."""
from collections.abc import Sequence

import numpy as np

from packages.optimizer.objective import Candidate, DecisionSpace, StochasticObjective
from packages.optimizer.streams import Stream

from .erlang import analytic_objective
from .model import QueueModel
from .simulator import simulate_wait_batch


class QueueObjective(StochasticObjective):
    """Simulated J(mu) = mean wait + C*k*mu^2; replications are vectorised."""

    def __init__(self, model: QueueModel):
        self.model = model

    @property
    def space(self) -> DecisionSpace:
        return self.model.space

    def sample(self, x: Candidate, stream: Stream) -> float:
        return float(self.sample_batch(x, [stream])[0])

    def sample_batch(self, x: Candidate, streams: Sequence[Stream]) -> np.ndarray:
        mu = x.x[0]
        return simulate_wait_batch(self.model, mu, streams) + self.model.cost(mu)


class AnalyticQueueObjective(StochasticObjective):
    """Zero-noise variant returning the Erlang C value for every stream."""

    def __init__(self, model: QueueModel):
        self.model = model

    @property
    def space(self) -> DecisionSpace:
        return self.model.space

    def sample(self, x: Candidate, stream: Stream) -> float:
        mu = x.x[0]
        self.model.check_mu(mu)
        return analytic_objective(self.model, mu)
