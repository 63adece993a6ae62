"""Optimizer interface and the run artefacts every optimizer produces."""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum

from .objective import Candidate, DecisionSpace, StochasticObjective
from .schemas import TesoConfig
from .streams import Stream


class TrialStatus(str, Enum):
    """Outcome of one trial."""
    EVALUATED = "evaluated"
    SKIPPED_TABU = "skipped_tabu"
    ASPIRATION_ACCEPTED = "aspiration_accepted"


class SearchMode(str, Enum):
    """How the trial's candidate was generated."""
    DIVERSIFY = "diversify"
    INTENSIFY = "intensify"


@dataclass(frozen=True)
class TrialRecord:
    """One row of the run trace. Skipped trials carry no mean/std."""
    t: int
    candidate: Candidate
    status: TrialStatus
    mode: SearchMode
    best_so_far: float
    eta: float  # noise level the candidate was generated with
    mean: float | None = None
    std: float | None = None

    def __post_init__(self) -> None:
        has_stats = self.mean is not None or self.std is not None
        if self.status is TrialStatus.SKIPPED_TABU and has_stats:
            raise ValueError("Skipped trials carry no evaluation")

    @property
    def evaluated(self) -> bool:
        return self.status is not TrialStatus.SKIPPED_TABU


@dataclass
class OptimizationResult:
    """Best candidate found plus the full trial trace."""
    x_best: Candidate
    f_best: float
    trials_used: int
    evaluations_used: int
    terminated_early: bool
    trace: list[TrialRecord] = field(default_factory=list)
    samples_used: int = 0
    skipped_tabu: int = 0
    aspiration_accepted: int = 0

    @property
    def best_so_far(self) -> list[float]:
        return [r.best_so_far for r in self.trace]

    @property
    def evaluated_means(self) -> list[float]:
        return [r.mean for r in self.trace if r.mean is not None]

    @property
    def intensify_fraction(self) -> float:
        if not self.trace:
            return 0.0
        return sum(r.mode is SearchMode.INTENSIFY for r in self.trace) / len(self.trace)


class BaseOptimizer(ABC):
    """Strategy interface shared by TESO, its ablations and random search."""

    def __init__(self, config: TesoConfig, name: str | None = None):
        self.config = config
        self.name = name or self.__class__.__name__

    @abstractmethod
    def run(
        self,
        model: StochasticObjective,
        space: DecisionSpace,
        stream: Stream | None = None,
    ) -> OptimizationResult:
        """Optimise ``model`` over ``space``; ``stream`` defaults to the config's base seed."""
