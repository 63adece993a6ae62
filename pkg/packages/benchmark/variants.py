"""The four compared algorithms and how each is built from a base config."""
from dataclasses import dataclass
from enum import Enum

from packages.optimizer.base import BaseOptimizer
from packages.optimizer.random_search import RandomSearchOptimizer
from packages.optimizer.schemas import TesoConfig
from packages.optimizer.teso import TesoOptimizer


class AlgorithmVariant(str, Enum):
    PRS = "prs"
    TESO_NO_ELITE = "teso_no_elite"
    TESO_NO_TABU = "teso_no_tabu"
    TESO = "teso"

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    AlgorithmVariant.PRS: "PRS",
    AlgorithmVariant.TESO_NO_ELITE: "TESO-noElite",
    AlgorithmVariant.TESO_NO_TABU: "TESO-noTabu",
    AlgorithmVariant.TESO: "TESO",
}

_OPTIMIZERS: dict[AlgorithmVariant, type[BaseOptimizer]] = {
    AlgorithmVariant.PRS: RandomSearchOptimizer,
    AlgorithmVariant.TESO_NO_ELITE: TesoOptimizer,
    AlgorithmVariant.TESO_NO_TABU: TesoOptimizer,
    AlgorithmVariant.TESO: TesoOptimizer,
}


@dataclass(frozen=True)
class AlgorithmSpec:
    """A variant paired with the config it runs under."""
    variant: AlgorithmVariant
    config: TesoConfig

    def __post_init__(self) -> None:
        if self.variant is AlgorithmVariant.TESO_NO_TABU and not self.config.disable_tabu:
            raise ValueError("TESO-noTabu requires disable_tabu=True")
        if self.variant is AlgorithmVariant.TESO_NO_ELITE and not self.config.disable_elite:
            raise ValueError("TESO-noElite requires disable_elite=True")

    @classmethod
    def for_variant(cls, variant: AlgorithmVariant, base: TesoConfig) -> "AlgorithmSpec":
        """Apply the variant's ablation switches on top of ``base``."""
        switches = {
            AlgorithmVariant.PRS: {},
            AlgorithmVariant.TESO_NO_ELITE: {"disable_elite": True, "disable_tabu": False},
            AlgorithmVariant.TESO_NO_TABU: {"disable_tabu": True, "disable_elite": False},
            AlgorithmVariant.TESO: {"disable_tabu": False, "disable_elite": False},
        }[variant]
        return cls(variant=variant, config=base.model_copy(update=switches))

    @property
    def label(self) -> str:
        return self.variant.label

    def build(self) -> BaseOptimizer:
        return _OPTIMIZERS[self.variant](self.config, name=self.label)


def default_specs(
    base: TesoConfig,
    variants: list[AlgorithmVariant] | None = None,
) -> list[AlgorithmSpec]:
    """Specs in results-table order: PRS, TESO-noElite, TESO-noTabu, TESO."""
    chosen = variants or list(AlgorithmVariant)
    return [AlgorithmSpec.for_variant(v, base) for v in chosen]
