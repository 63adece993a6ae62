"""Per-macro outcomes and their cross-macro aggregates."""
from dataclasses import dataclass, field

import pandas as pd

from packages.optimizer.objective import Candidate

from .variants import AlgorithmVariant


@dataclass
class MacroResult:
    """Outcome of one independently seeded run of one algorithm."""
    variant: AlgorithmVariant
    macro_index: int
    final_best_mean: float = float("nan")
    final_best_x: Candidate | None = None
    avg_last: float = float("nan")
    wall_time_seconds: float = 0.0
    trace: list[float] = field(default_factory=list)  # best-so-far per trial
    trials_used: int = 0
    evaluations_used: int = 0
    samples_used: int = 0
    skipped_tabu: int = 0
    intensify_fraction: float = 0.0
    terminated_early: bool = False
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class AlgorithmSummary:
    """Cross-macro statistics for one algorithm. Spreads are None below two macros."""
    variant: AlgorithmVariant
    n_macro: int
    n_failed: int
    final_best_mean: float
    final_best_std: float | None
    avg_last_mean: float
    avg_last_std: float | None
    wall_time_mean: float
    mean_evaluations: float
    mean_samples: float
    mean_skipped_tabu: float
    mean_intensify_fraction: float
    early_terminated: int
    curve: pd.DataFrame  # t, mean_best, se

    @property
    def label(self) -> str:
        return self.variant.label


@dataclass
class SuiteSummary:
    base_seed: int
    n_macro: int
    budget: int
    algorithms: list[AlgorithmSummary]
    macros: list[MacroResult] = field(default_factory=list)

    def get(self, variant: AlgorithmVariant) -> AlgorithmSummary:
        for summary in self.algorithms:
            if summary.variant is variant:
                return summary
        raise KeyError(variant.value)
