"""Machine-readable outputs: trial traces, convergence curves and suite summaries.

CSV files have a fixed header line, '.' decimals and full float precision.
Summaries are TOML records, one ``[[algorithm]]`` table per algorithm, with
numbers rounded to 6 significant digits.
"""
import logging
import math
from pathlib import Path

import pandas as pd

from packages.benchmark.results import AlgorithmSummary, SuiteSummary
from packages.optimizer.base import OptimizationResult
from packages.optimizer.exceptions import ConfigError

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["t", "mode", "status", "x", "mean", "std", "best_so_far", "eta"]
CURVE_COLUMNS = ["t", "mean_best", "se"]


def ensure_dir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError(f"Cannot create output directory {path}: {e}") from e
    return path


def trace_frame(result: OptimizationResult) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "t": r.t,
                "mode": r.mode.value,
                "status": r.status.value,
                "x": str(r.candidate),
                "mean": r.mean,
                "std": r.std,
                "best_so_far": r.best_so_far,
                "eta": r.eta,
            }
            for r in result.trace
        ],
        columns=TRACE_COLUMNS,
    )


def write_trace_csv(result: OptimizationResult, path: Path) -> Path:
    trace_frame(result).to_csv(path, index=False, lineterminator="\n", na_rep="")
    logger.info("Wrote trace (%d rows) to %s", len(result.trace), path)
    return path


def write_curve_csv(curve: pd.DataFrame, path: Path) -> Path:
    curve[CURVE_COLUMNS].to_csv(path, index=False, lineterminator="\n")
    logger.info("Wrote convergence curve to %s", path)
    return path


def _num(value: float | None) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = f"{value:.6g}"
    # keep TOML floats floats
    return text if any(c in text for c in ".en") else f"{text}.0"


def _record(summary: AlgorithmSummary) -> list[str]:
    return [
        "[[algorithm]]",
        f'name = "{summary.label}"',
        f'variant = "{summary.variant.value}"',
        f"n_macro = {summary.n_macro}",
        f"n_failed = {summary.n_failed}",
        f"final_best_mean = {_num(summary.final_best_mean)}",
        f"final_best_std = {_num(summary.final_best_std)}",
        f"avg_last_mean = {_num(summary.avg_last_mean)}",
        f"avg_last_std = {_num(summary.avg_last_std)}",
        f"spread_defined = {'true' if summary.final_best_std is not None else 'false'}",
        f"wall_time_mean = {_num(summary.wall_time_mean)}",
        f"mean_evaluations = {_num(summary.mean_evaluations)}",
        f"mean_samples = {_num(summary.mean_samples)}",
        f"mean_skipped_tabu = {_num(summary.mean_skipped_tabu)}",
        f"mean_intensify_fraction = {_num(summary.mean_intensify_fraction)}",
        f"early_terminated = {summary.early_terminated}",
        "",
    ]


def render_summary(summary: SuiteSummary) -> str:
    lines = [
        f"# seed = {summary.base_seed}",
        f"base_seed = {summary.base_seed}",
        f"n_macro = {summary.n_macro}",
        f"budget = {summary.budget}",
        "",
    ]
    for algorithm in summary.algorithms:
        lines.extend(_record(algorithm))
    return "\n".join(lines)


def write_summary(summary: SuiteSummary, path: Path) -> Path:
    path.write_text(render_summary(summary), encoding="utf-8")
    logger.info("Wrote summary to %s", path)
    return path


def summary_table(summary: SuiteSummary) -> str:
    """Human-readable comparison table, one row per algorithm."""
    def spread(v: float | None) -> str:
        return "n/a" if v is None else f"{v:.2f}"

    rows = [
        {
            "Algorithm": a.label,
            "Final Best Mean Obj.": f"{a.final_best_mean:.2f}",
            "Final Best Std Dev": spread(a.final_best_std),
            "Avg Obj. (Mean ± Std Dev)": f"{a.avg_last_mean:.2f} ± {spread(a.avg_last_std)}",
            "Avg Comp. Time (s)": f"{a.wall_time_mean:.2f}",
        }
        for a in summary.algorithms
    ]
    return pd.DataFrame(rows).to_string(index=False)
