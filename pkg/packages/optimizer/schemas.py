"""Validated algorithm configuration."""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .memory import Representation
from .objective import Direction


class NoiseSchedule(str, Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"


class AspirationPolicy(str, Enum):
    """What lets a tabu candidate through."""
    PILOT_MEAN = "pilot_mean"  # pilot mean strictly beats f_best
    NEVER = "never"            # strict tabu
    ALWAYS = "always"          # tabu kept for bookkeeping only


class NoEliteFallback(str, Enum):
    """Intensification source when elite memory is switched off."""
    PERTURB_BEST = "perturb_best"
    RANDOM = "random"


class TesoConfig(BaseModel):
    """Hyperparameters of one optimizer run, including ablation switches.

    Defaults reproduce the reference experimental design on the M/M/3 problem.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    budget: int = Field(default=300, gt=0, description="Total trial budget T")
    n_init: int = Field(default=20, ge=0, description="Random initialisation trials")
    n_rep: int = Field(default=30, gt=0, description="Replications per evaluation")
    eta_init: float = Field(default=0.2, gt=0)
    eta_final: float = Field(default=0.01, gt=0)
    tabu_capacity: int = Field(default=15, ge=0, description="C_T; 0 disables the list")
    elite_capacity: int = Field(default=10, gt=0, description="C_E")
    p_div: float = Field(default=0.2, ge=0.0, le=1.0)
    dt_max: int = Field(default=50, gt=0, description="Trials without improvement before stopping")
    direction: Direction = Direction.MINIMIZE
    bin_width: float = Field(default=0.01, gt=0)
    pilot_reps: int = Field(default=5, gt=0)
    disable_tabu: bool = False
    disable_elite: bool = False
    base_seed: int = 2024

    representation: Representation = Representation.BINS
    noise_schedule: NoiseSchedule = NoiseSchedule.LINEAR
    aspiration_policy: AspirationPolicy = AspirationPolicy.PILOT_MEAN
    reuse_pilot: bool = True
    no_elite_fallback: NoEliteFallback = NoEliteFallback.PERTURB_BEST
    keep_samples: bool = False

    @model_validator(mode="after")
    def _check_invariants(self) -> "TesoConfig":
        if self.n_init > self.budget:
            raise ValueError(f"n_init ({self.n_init}) must not exceed budget ({self.budget})")
        if self.eta_final > self.eta_init:
            raise ValueError(
                f"eta_final ({self.eta_final}) must not exceed eta_init ({self.eta_init})"
            )
        if self.pilot_reps > self.n_rep:
            raise ValueError(f"pilot_reps ({self.pilot_reps}) must not exceed n_rep ({self.n_rep})")
        return self

    @property
    def effective_tabu_capacity(self) -> int:
        return 0 if self.disable_tabu else self.tabu_capacity
