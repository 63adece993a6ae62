"""Pure random sampling baseline."""
import logging

from .base import BaseOptimizer, OptimizationResult, SearchMode, TrialRecord, TrialStatus
from .exceptions import OptimizationError
from .objective import Candidate, DecisionSpace, StochasticObjective, evaluate
from .schemas import TesoConfig
from .streams import EVALUATE, GENERATE, Stream, derive, generator, root_stream

logger = logging.getLogger(__name__)


class RandomSearchOptimizer(BaseOptimizer):
    """Uniform candidates for the whole budget, no memory, no early stop.

    Only ``budget``, ``n_rep``, ``direction``, ``base_seed`` and
    ``keep_samples`` are read from the config.
    """

    def run(
        self,
        model: StochasticObjective,
        space: DecisionSpace,
        stream: Stream | None = None,
    ) -> OptimizationResult:
        config = self.config
        if config.budget < 1:
            raise OptimizationError("Trial budget must be positive", {"budget": config.budget})
        run_stream = stream if stream is not None else root_stream(config.base_seed)
        direction = config.direction
        f_best = direction.worst
        x_best: Candidate | None = None
        trace: list[TrialRecord] = []

        for t in range(1, config.budget + 1):
            x = space.random_candidate(generator(derive(run_stream, t, GENERATE)))
            ev = evaluate(
                model, x, config.n_rep, derive(run_stream, t, EVALUATE),
                keep_samples=config.keep_samples,
            )
            if direction.better(ev.mean, f_best):
                f_best, x_best = ev.mean, x
            trace.append(TrialRecord(
                t=t, candidate=x, status=TrialStatus.EVALUATED, mode=SearchMode.DIVERSIFY,
                best_so_far=f_best, eta=0.0, mean=ev.mean, std=ev.std,
            ))

        assert x_best is not None
        logger.info("%s: f_best=%.6g at %s after %d trials", self.name, f_best, x_best, len(trace))
        return OptimizationResult(
            x_best=x_best,
            f_best=f_best,
            trials_used=len(trace),
            evaluations_used=len(trace),
            terminated_early=False,
            trace=trace,
            samples_used=len(trace) * config.n_rep,
        )


def run_prs(
    config: TesoConfig,
    model: StochasticObjective,
    space: DecisionSpace,
    stream: Stream | None = None,
) -> OptimizationResult:
    return RandomSearchOptimizer(config, name="PRS").run(model, space, stream)
