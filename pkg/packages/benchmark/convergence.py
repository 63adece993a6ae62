"""Cross-macro convergence curves."""
from collections.abc import Sequence

import numpy as np
import pandas as pd

from packages.optimizer.exceptions import OptimizationError

from .results import MacroResult


def pad_trace(trace: Sequence[float], length: int) -> list[float]:
    """Carry the last best-so-far value forward up to ``length`` trials."""
    if not trace:
        raise OptimizationError("Cannot pad an empty trace")
    padded = list(trace[:length])
    padded.extend([padded[-1]] * (length - len(padded)))
    return padded


def convergence_curve(results: Sequence[MacroResult], T: int) -> pd.DataFrame:
    """Mean best-so-far per trial with its standard error across macros.

    Early-terminated runs are padded to ``T`` first. Returns columns ``t``
    (1..T), ``mean_best`` and ``se``; ``se`` is 0 for a single macro.
    """
    if not results:
        raise OptimizationError("No macro results to aggregate")
    if T < 1:
        raise OptimizationError("Curve length must be positive", {"T": T})
    frame = pd.DataFrame({r.macro_index: pad_trace(r.trace, T) for r in results})
    n = frame.shape[1]
    if n > 1:
        se = (frame.std(axis=1, ddof=1) / np.sqrt(n)).to_numpy()
    else:
        se = np.zeros(T)
    return pd.DataFrame({
        "t": np.arange(1, T + 1),
        "mean_best": frame.mean(axis=1).to_numpy(),
        "se": se,
    })
