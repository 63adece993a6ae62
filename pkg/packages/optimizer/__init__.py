"""Simulation optimization core: objective contract, memories, TESO and random search."""
from .base import BaseOptimizer, OptimizationResult, SearchMode, TrialRecord, TrialStatus
from .exceptions import (
    ConfigError,
    DomainError,
    EmptyMemoryError,
    OptimizationError,
    StabilityError,
    TesoError,
)
from .memory import CandidateKey, EliteMemory, Representation, TabuList, make_key, represent
from .objective import (
    Candidate,
    CountingObjective,
    DecisionSpace,
    Direction,
    Evaluation,
    FunctionObjective,
    StochasticObjective,
    evaluate,
)
from .random_search import RandomSearchOptimizer, run_prs
from .schemas import AspirationPolicy, NoEliteFallback, NoiseSchedule, TesoConfig
from .teso import (
    SearchState,
    TesoOptimizer,
    aspiration_met,
    generate_candidate,
    is_improvement,
    perturb,
    run,
    update_noise,
)

__all__ = [
    # Objective contract
    "Candidate",
    "CountingObjective",
    "DecisionSpace",
    "Direction",
    "Evaluation",
    "FunctionObjective",
    "StochasticObjective",
    "evaluate",
    # Memories
    "CandidateKey",
    "EliteMemory",
    "Representation",
    "TabuList",
    "make_key",
    "represent",
    # Configuration
    "AspirationPolicy",
    "NoEliteFallback",
    "NoiseSchedule",
    "TesoConfig",
    # Optimizers
    "BaseOptimizer",
    "OptimizationResult",
    "RandomSearchOptimizer",
    "SearchMode",
    "SearchState",
    "TesoOptimizer",
    "TrialRecord",
    "TrialStatus",
    "aspiration_met",
    "generate_candidate",
    "is_improvement",
    "perturb",
    "run",
    "run_prs",
    "update_noise",
    # Errors
    "ConfigError",
    "DomainError",
    "EmptyMemoryError",
    "OptimizationError",
    "StabilityError",
    "TesoError",
]
