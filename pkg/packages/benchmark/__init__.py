"""Benchmark harness: algorithm variants, macro-replicated suites, convergence curves."""
from .convergence import convergence_curve, pad_trace
from .harness import LastMetric, run_macro, run_suite, summarize, tail_average
from .results import AlgorithmSummary, MacroResult, SuiteSummary
from .variants import AlgorithmSpec, AlgorithmVariant, default_specs

__all__ = [
    "AlgorithmSpec",
    "AlgorithmVariant",
    "default_specs",
    "MacroResult",
    "AlgorithmSummary",
    "SuiteSummary",
    "LastMetric",
    "run_macro",
    "run_suite",
    "summarize",
    "tail_average",
    "convergence_curve",
    "pad_trace",
]
