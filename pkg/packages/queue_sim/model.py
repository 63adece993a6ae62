"""M/M/k queue test problem parameters."""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from packages.optimizer.exceptions import DomainError, StabilityError
from packages.optimizer.objective import Candidate, DecisionSpace


class WaitMode(str, Enum):
    """Which delay the simulator reports."""
    QUEUE = "queue"      # time in queue only
    SOJOURN = "sojourn"  # queue plus service


class QueueModel(BaseModel):
    """Poisson arrivals, exponential service, k FIFO servers, infinite buffer.

    The objective is mean wait plus ``cost_c * k * mu**2``, minimised over the
    per-server service rate ``mu`` in ``[mu_lower, mu_upper]``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    arrival_rate: float = Field(default=2.5, gt=0, alias="lambda")
    k: int = Field(default=3, ge=1, description="Number of servers")
    cost_c: float = Field(default=0.5, ge=0)
    mu_lower: float = Field(default=1.0, gt=0)
    mu_upper: float = Field(default=4.0, gt=0)
    customers_per_rep: int = Field(default=2000, gt=0)
    warmup_customers: int = Field(default=500, ge=0)
    wait_mode: WaitMode = WaitMode.QUEUE

    @model_validator(mode="after")
    def _check_stability(self) -> "QueueModel":
        if self.mu_lower >= self.mu_upper:
            raise ValueError(f"mu_lower ({self.mu_lower}) must be < mu_upper ({self.mu_upper})")
        if self.k * self.mu_lower <= self.arrival_rate:
            raise ValueError(
                f"Stability rule violated: k*mu_lower = {self.k * self.mu_lower:g} must exceed "
                f"lambda = {self.arrival_rate:g}"
            )
        return self

    @property
    def space(self) -> DecisionSpace:
        return DecisionSpace.box(self.mu_lower, self.mu_upper)

    def utilisation(self, mu: float) -> float:
        return self.arrival_rate / (self.k * mu)

    def cost(self, mu: float) -> float:
        """Deterministic capacity cost C*k*mu^2."""
        return self.cost_c * self.k * mu * mu

    def check_stable(self, mu: float) -> None:
        if self.k * mu <= self.arrival_rate:
            raise StabilityError.for_rates(self.k, mu, self.arrival_rate)

    def check_mu(self, mu: float) -> None:
        """Stability first, then bounds."""
        self.check_stable(mu)
        if not self.mu_lower <= mu <= self.mu_upper:
            raise DomainError(Candidate.of(mu).x, self.mu_lower, self.mu_upper)
