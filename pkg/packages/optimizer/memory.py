"""Short-term tabu list and long-term elite memory."""
import logging
import math
from collections import OrderedDict
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import EmptyMemoryError
from .objective import Candidate, DecisionSpace, Direction

logger = logging.getLogger(__name__)

# Absorbs float error at bin edges, e.g. (4.0 - 1.0) / 0.01
_BIN_EPS = 1e-9


class Representation(str, Enum):
    """How a candidate is turned into a hashable key."""
    BINS = "bins"      # bin indices at bin_width resolution
    EXACT = "exact"    # rounded string form of the coordinates


@dataclass(frozen=True)
class CandidateKey:
    """Hashable stand-in for a candidate."""
    bin_indices: tuple[int, ...] = ()
    label: str = ""


def represent(x: Candidate, space: DecisionSpace, bin_width: float) -> CandidateKey:
    """Bin-index key: floor((x_i - lower_i) / bin_width) per coordinate."""
    if bin_width <= 0:
        raise ValueError("bin_width must be > 0")
    return CandidateKey(
        bin_indices=tuple(
            math.floor((xi - lo) / bin_width + _BIN_EPS) for xi, lo in zip(x.x, space.lower)
        )
    )


def represent_exact(x: Candidate) -> CandidateKey:
    return CandidateKey(label=";".join(f"{v:.12g}" for v in x.x))


def make_key(
    x: Candidate,
    space: DecisionSpace,
    bin_width: float,
    mode: Representation = Representation.BINS,
) -> CandidateKey:
    if mode is Representation.EXACT:
        return represent_exact(x)
    return represent(x, space, bin_width)


class TabuList:
    """Bounded FIFO of recently evaluated keys.

    Re-inserting a present key moves it to the young end, so its tenure
    restarts. Capacity 0 disables the list: nothing is stored and membership
    is always false.
    """

    def __init__(self, capacity: int):
        if capacity < 0:
            raise ValueError("capacity must be >= 0")
        self.capacity = capacity
        self._entries: OrderedDict[CandidateKey, None] = OrderedDict()

    @property
    def enabled(self) -> bool:
        return self.capacity > 0

    def insert(self, key: CandidateKey) -> None:
        if not self.enabled:
            return
        if key in self._entries:
            self._entries.move_to_end(key)
            return
        self._entries[key] = None
        while len(self._entries) > self.capacity:
            evicted, _ = self._entries.popitem(last=False)
            logger.debug("Tabu list evicted %s", evicted)

    def contains(self, key: CandidateKey) -> bool:
        return key in self._entries

    def __contains__(self, key: object) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[CandidateKey]:
        """Oldest first."""
        return iter(self._entries)


@dataclass(frozen=True)
class EliteEntry:
    candidate: Candidate
    mean: float
    seq: int  # insertion order, used for recency tie-breaks


class EliteMemory:
    """The ``capacity`` best (candidate, mean) pairs ever inserted.

    On equal means the newer pair is preferred.
    """

    def __init__(self, capacity: int, direction: Direction = Direction.MINIMIZE):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.direction = direction
        self._entries: list[EliteEntry] = []
        self._seq = 0

    def _worst_index(self) -> int:
        def rank(i: int) -> tuple[float, int]:
            e = self._entries[i]
            badness = e.mean if self.direction is Direction.MINIMIZE else -e.mean
            return badness, -e.seq
        return max(range(len(self._entries)), key=rank)

    def insert(self, x: Candidate, mean: float) -> bool:
        """Offer a pair; returns False when it was rejected."""
        entry = EliteEntry(candidate=x, mean=mean, seq=self._seq)
        self._seq += 1
        if len(self._entries) < self.capacity:
            self._entries.append(entry)
            return True
        worst = self._worst_index()
        if self.direction.better(self._entries[worst].mean, mean):
            return False
        self._entries[worst] = entry
        return True

    def select(self, rng: np.random.Generator) -> Candidate:
        """Uniformly random stored candidate."""
        if not self._entries:
            raise EmptyMemoryError()
        return self._entries[int(rng.integers(len(self._entries)))].candidate

    def best(self) -> EliteEntry | None:
        if not self._entries:
            return None
        key = (lambda e: (e.mean, -e.seq)) if self.direction is Direction.MINIMIZE \
            else (lambda e: (-e.mean, -e.seq))
        return min(self._entries, key=key)

    def pairs(self) -> list[tuple[Candidate, float]]:
        return [(e.candidate, e.mean) for e in self._entries]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[EliteEntry]:
        return iter(self._entries)
