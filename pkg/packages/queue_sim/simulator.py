"""Replicated FIFO M/M/k simulation via the multi-server workload recursion.

For customer n with the servers' remaining workloads sorted ascending in
``w``, the queue delay is ``w[0]``. The customer's service is added to the
least-loaded server, every workload then drains by the interarrival gap to
customer n+1 and is floored at zero, and the vector is re-sorted. This is
exact for FIFO delays and needs no event calendar.
"""
import logging
from collections.abc import Sequence

import numpy as np

from packages.optimizer.streams import ARRIVALS, SERVICES, Stream, derive, generator

from .model import QueueModel, WaitMode

logger = logging.getLogger(__name__)


def _draw(model: QueueModel, mu: float, streams: Sequence[Stream]) -> tuple[np.ndarray, np.ndarray]:
    """Interarrival gaps and service times, shape (customers, replications)."""
    n = model.warmup_customers + model.customers_per_rep
    gaps = np.empty((n, len(streams)))
    services = np.empty((n, len(streams)))
    for j, s in enumerate(streams):
        gaps[:, j] = generator(derive(s, ARRIVALS)).exponential(1.0 / model.arrival_rate, n)
        services[:, j] = generator(derive(s, SERVICES)).exponential(1.0 / mu, n)
    return gaps, services


def workload_delays(gaps: np.ndarray, services: np.ndarray, k: int) -> np.ndarray:
    """Queue delays for every customer, computed column-wise per replication."""
    n, reps = services.shape
    w = np.zeros((reps, k))
    delays = np.empty((n, reps))
    for i in range(n):
        delays[i] = w[:, 0]
        w[:, 0] += services[i]
        w -= gaps[i][:, None]
        np.maximum(w, 0.0, out=w)
        if k > 1:
            w.sort(axis=1)
    return delays


def simulate_wait_batch(model: QueueModel, mu: float, streams: Sequence[Stream]) -> np.ndarray:
    """Mean post-warm-up wait for each replication stream."""
    model.check_mu(mu)
    if not streams:
        return np.empty(0)
    gaps, services = _draw(model, mu, streams)
    observed = workload_delays(gaps, services, model.k)
    if model.wait_mode is WaitMode.SOJOURN:
        observed = observed + services
    # one contiguous row per replication so every mean sums in the same order
    kept = np.ascontiguousarray(observed[model.warmup_customers:].T)
    return np.array([float(np.mean(row)) for row in kept])


def simulate_wait(model: QueueModel, mu: float, stream: Stream) -> float:
    """One replication: mean delay (or sojourn) of the measured customers."""
    return float(simulate_wait_batch(model, mu, [stream])[0])


def objective_sample(model: QueueModel, mu: float, stream: Stream) -> float:
    """Simulated wait plus the capacity cost."""
    return simulate_wait(model, mu, stream) + model.cost(mu)
