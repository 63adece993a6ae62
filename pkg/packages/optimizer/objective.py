"""Stochastic black-box objective contract and replicated evaluation.

An objective maps a candidate and a random stream to one noisy draw of the
performance measure. ``evaluate`` averages ``n_rep`` draws, each taken from a
child stream derived from (parent stream, replication index), so the result
does not depend on the order in which replications are computed.
"""
import logging
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import DomainError
from .streams import Stream, derive, generator

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    """Optimization direction."""
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"

    @property
    def worst(self) -> float:
        """Initial incumbent value: nothing beats it."""
        return float("inf") if self is Direction.MINIMIZE else float("-inf")

    def better(self, a: float, b: float) -> bool:
        """True when ``a`` strictly beats ``b``."""
        return a < b if self is Direction.MINIMIZE else a > b


@dataclass(frozen=True)
class DecisionSpace:
    """Axis-aligned box of feasible candidates."""
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ValueError("lower and upper must be non-empty and of equal length")
        for lo, hi in zip(self.lower, self.upper):
            if not lo < hi:
                raise ValueError(f"Empty interval [{lo}, {hi}]: lower must be < upper")

    @classmethod
    def box(cls, lower: float, upper: float, dimension: int = 1) -> "DecisionSpace":
        """Same interval on every coordinate."""
        if dimension < 1:
            raise ValueError("dimension must be positive")
        return cls(lower=(float(lower),) * dimension, upper=(float(upper),) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def lower_array(self) -> np.ndarray:
        return np.asarray(self.lower, dtype=float)

    @property
    def upper_array(self) -> np.ndarray:
        return np.asarray(self.upper, dtype=float)

    @property
    def ranges(self) -> np.ndarray:
        return self.upper_array - self.lower_array

    def contains(self, x: "Candidate") -> bool:
        return len(x.x) == self.dimension and all(
            lo <= xi <= hi for xi, lo, hi in zip(x.x, self.lower, self.upper)
        )

    def validate(self, x: "Candidate") -> None:
        if not self.contains(x):
            raise DomainError(x.x, min(self.lower), max(self.upper))

    def clamp(self, values: np.ndarray) -> "Candidate":
        return Candidate.from_array(np.clip(values, self.lower_array, self.upper_array))

    def random_candidate(self, rng: np.random.Generator) -> "Candidate":
        """Uniform draw over the box."""
        return Candidate.from_array(rng.uniform(self.lower_array, self.upper_array))


@dataclass(frozen=True)
class Candidate:
    """A point in decision space."""
    x: tuple[float, ...]

    @classmethod
    def of(cls, *values: float) -> "Candidate":
        return cls(x=tuple(float(v) for v in values))

    @classmethod
    def from_array(cls, values: np.ndarray) -> "Candidate":
        return cls(x=tuple(float(v) for v in np.atleast_1d(values)))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.x, dtype=float)

    def __str__(self) -> str:
        if len(self.x) == 1:
            return repr(self.x[0])
        return ";".join(repr(v) for v in self.x)


@dataclass(frozen=True)
class Evaluation:
    """Replicated-sample statistics for one candidate."""
    mean: float
    std: float
    n_rep: int
    samples: tuple[float, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_samples(cls, samples: Sequence[float], keep_samples: bool = False) -> "Evaluation":
        values = np.asarray(samples, dtype=float)
        if values.size == 0:
            raise ValueError("Cannot build an evaluation from zero samples")
        std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
        return cls(
            mean=float(np.mean(values)),
            std=std,
            n_rep=int(values.size),
            samples=tuple(float(v) for v in values) if keep_samples else None,
        )

    def merge(self, other: "Evaluation", keep_samples: bool = False) -> "Evaluation":
        """Concatenate two sample sets (both must retain their samples)."""
        if self.samples is None or other.samples is None:
            raise ValueError("Both evaluations must retain samples to be merged")
        return Evaluation.from_samples(self.samples + other.samples, keep_samples=keep_samples)


class StochasticObjective(ABC):
    """Noisy black-box performance measure f(x, omega).

    Implementations hold no mutable state: all randomness flows through the
    stream argument, so one instance can serve concurrent evaluations.
    """

    @property
    @abstractmethod
    def space(self) -> DecisionSpace:
        """Feasible set the objective is defined on."""

    @abstractmethod
    def sample(self, x: Candidate, stream: Stream) -> float:
        """One noisy draw of the performance measure at ``x``."""

    def sample_batch(self, x: Candidate, streams: Sequence[Stream]) -> np.ndarray:
        """Draws for several replication streams; override to vectorise."""
        return np.array([self.sample(x, s) for s in streams], dtype=float)


class FunctionObjective(StochasticObjective):
    """Deterministic callable plus optional additive Gaussian noise."""

    def __init__(
        self,
        fn: Callable[[np.ndarray], float],
        space: DecisionSpace,
        noise_std: float = 0.0,
    ):
        if noise_std < 0:
            raise ValueError("noise_std must be >= 0")
        self.fn = fn
        self._space = space
        self.noise_std = noise_std

    @property
    def space(self) -> DecisionSpace:
        return self._space

    def sample(self, x: Candidate, stream: Stream) -> float:
        self._space.validate(x)
        value = float(self.fn(x.as_array()))
        if self.noise_std > 0:
            value += float(generator(stream).normal(0.0, self.noise_std))
        return value


class CountingObjective(StochasticObjective):
    """Wraps an objective and counts every sample drawn through it."""

    def __init__(self, inner: StochasticObjective):
        self.inner = inner
        self.count = 0

    @property
    def space(self) -> DecisionSpace:
        return self.inner.space

    def sample(self, x: Candidate, stream: Stream) -> float:
        self.count += 1
        return self.inner.sample(x, stream)

    def sample_batch(self, x: Candidate, streams: Sequence[Stream]) -> np.ndarray:
        self.count += len(streams)
        return self.inner.sample_batch(x, streams)


def replication_streams(stream: Stream, n_rep: int, first_replication: int = 0) -> Iterator[Stream]:
    """Child streams for replications ``first_replication .. first_replication + n_rep - 1``."""
    for j in range(first_replication, first_replication + n_rep):
        yield derive(stream, j)


def evaluate(
    model: StochasticObjective,
    x: Candidate,
    n_rep: int,
    stream: Stream,
    first_replication: int = 0,
    keep_samples: bool = False,
) -> Evaluation:
    """Run ``n_rep`` replications at ``x`` and summarise them.

    ``first_replication`` offsets the replication indices, so a pilot over
    indices [0, p) merged with a follow-up over [p, n) holds exactly the
    samples of a single evaluation over [0, n).
    """
    if n_rep < 1:
        raise ValueError("n_rep must be >= 1")
    streams = list(replication_streams(stream, n_rep, first_replication))
    samples = model.sample_batch(x, streams)
    return Evaluation.from_samples(samples, keep_samples=keep_samples)
