"""Exception hierarchy shared by the optimizer, the queue simulator and the CLI.

Every error carries a human-readable message plus a details dict, and an exit
code the CLI hands back to the shell.
"""


class TesoError(Exception):
    """Base exception for all toolkit errors."""

    exit_code: int = 1

    def __init__(self, message: str, details: dict | None = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class DomainError(TesoError):
    """A candidate lies outside its decision space."""

    exit_code = 2

    def __init__(self, x: tuple[float, ...], lower: float, upper: float):
        super().__init__(
            message=f"Candidate {list(x)} outside decision space [{lower}, {upper}]",
            details={"x": list(x), "lower": lower, "upper": upper},
        )


class StabilityError(TesoError):
    """Queue configuration with k*mu <= lambda (utilisation >= 1)."""

    exit_code = 3

    def __init__(self, k: int, utilisation: float, mu: float | None = None):
        where = f" at mu={mu:g}" if mu is not None else ""
        super().__init__(
            message=(
                f"Unstable queue{where}: utilisation rho = {utilisation:.6g} >= 1 "
                f"(stability requires k*mu > lambda with k={k})"
            ),
            details={"k": k, "rho": utilisation, "mu": mu},
        )

    @classmethod
    def for_rates(cls, k: int, mu: float, arrival_rate: float) -> "StabilityError":
        return cls(k, arrival_rate / (k * mu) if mu > 0 else float("inf"), mu)


class EmptyMemoryError(TesoError):
    """Elite selection attempted on an empty archive."""

    def __init__(self) -> None:
        super().__init__(message="Elite memory is empty")


class ConfigError(TesoError):
    """Invalid configuration value, unknown key or violated invariant."""

    exit_code = 2


class OptimizationError(TesoError):
    """Run-level failure, e.g. a zero trial budget or an empty result set."""
