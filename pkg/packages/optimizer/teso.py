"""Tabu-enhanced simulation optimization main loop.

Each trial generates a candidate (random diversification or perturbation of
an elite solution), screens it against the tabu list and the aspiration
rule, evaluates survivors with replicated simulation, then updates the
incumbent, both memories and the perturbation noise. The loop stops after
``budget`` trials or once ``dt_max`` evaluated trials in a row brought no
improvement.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .base import BaseOptimizer, OptimizationResult, SearchMode, TrialRecord, TrialStatus
from .exceptions import EmptyMemoryError, OptimizationError
from .memory import EliteMemory, TabuList, make_key
from .objective import (
    Candidate,
    DecisionSpace,
    Direction,
    Evaluation,
    StochasticObjective,
    evaluate,
)
from .schemas import AspirationPolicy, NoEliteFallback, NoiseSchedule, TesoConfig
from .streams import EVALUATE, GENERATE, Stream, derive, generator, root_stream

logger = logging.getLogger(__name__)


@dataclass
class SearchState:
    """Mutable state of one run."""
    tabu: TabuList
    elite: EliteMemory
    f_best: float
    eta: float
    x_best: Candidate | None = None
    t: int = 0
    dt: int = 0
    evaluations: int = 0
    samples: int = 0
    trace: list[TrialRecord] = field(default_factory=list)

    @classmethod
    def initial(cls, config: TesoConfig) -> "SearchState":
        return cls(
            tabu=TabuList(config.effective_tabu_capacity),
            elite=EliteMemory(config.elite_capacity, config.direction),
            f_best=config.direction.worst,
            eta=config.eta_init,
        )


def is_improvement(mean: float, f_best: float, direction: Direction) -> bool:
    """Strict comparison in the configured direction."""
    return direction.better(mean, f_best)


def update_noise(
    t: int,
    T: int,
    eta_init: float,
    eta_final: float,
    schedule: NoiseSchedule = NoiseSchedule.LINEAR,
) -> float:
    """Perturbation noise after trial ``t`` of ``T``."""
    if T < 1 or not 0 <= t <= T:
        raise ValueError(f"Need 0 <= t <= T and T >= 1, got t={t}, T={T}")
    frac = t / T
    if schedule is NoiseSchedule.EXPONENTIAL:
        return float(eta_init * (eta_final / eta_init) ** frac)
    return eta_init + (eta_final - eta_init) * frac


def perturb(
    x_e: Candidate,
    eta: float,
    space: DecisionSpace,
    rng: np.random.Generator,
) -> Candidate:
    """Gaussian step with per-coordinate sigma = eta * range, clamped to the box."""
    if eta < 0:
        raise ValueError("eta must be >= 0")
    step = rng.normal(0.0, eta * space.ranges)
    return space.clamp(x_e.as_array() + step)


def generate_candidate(
    state: SearchState,
    config: TesoConfig,
    space: DecisionSpace,
    rng: np.random.Generator,
) -> tuple[Candidate, SearchMode]:
    """Diversify during initialisation or with probability p_div, else intensify."""
    if state.t <= config.n_init or rng.random() < config.p_div:
        return space.random_candidate(rng), SearchMode.DIVERSIFY

    if config.disable_elite:
        if config.no_elite_fallback is NoEliteFallback.PERTURB_BEST and state.x_best is not None:
            return perturb(state.x_best, state.eta, space, rng), SearchMode.INTENSIFY
        return space.random_candidate(rng), SearchMode.DIVERSIFY

    try:
        x_e = state.elite.select(rng)
    except EmptyMemoryError:
        return space.random_candidate(rng), SearchMode.DIVERSIFY
    return perturb(x_e, state.eta, space, rng), SearchMode.INTENSIFY


def aspiration_met(
    x: Candidate,
    state: SearchState,
    config: TesoConfig,
    model: StochasticObjective,
    stream: Stream,
) -> tuple[bool, Evaluation | None]:
    """Decide whether a tabu candidate may be evaluated anyway.

    Under the pilot-mean policy, ``pilot_reps`` screening replications are
    run; the candidate passes when their mean strictly beats ``f_best``. The
    pilot keeps its samples so the full evaluation can extend it.
    """
    if config.aspiration_policy is AspirationPolicy.NEVER:
        return False, None
    if config.aspiration_policy is AspirationPolicy.ALWAYS:
        return True, None
    pilot = evaluate(model, x, config.pilot_reps, stream, keep_samples=True)
    return is_improvement(pilot.mean, state.f_best, config.direction), pilot


def _full_evaluation(
    x: Candidate,
    pilot: Evaluation | None,
    config: TesoConfig,
    model: StochasticObjective,
    stream: Stream,
) -> tuple[Evaluation, int]:
    """Evaluate ``x`` with n_rep replications; returns (evaluation, fresh samples drawn)."""
    if pilot is None:
        full = evaluate(model, x, config.n_rep, stream, keep_samples=config.keep_samples)
        return full, config.n_rep
    if not config.reuse_pilot:
        fresh = evaluate(
            model, x, config.n_rep, stream,
            first_replication=pilot.n_rep, keep_samples=config.keep_samples,
        )
        return fresh, config.n_rep
    remaining = config.n_rep - pilot.n_rep
    if remaining == 0:
        return Evaluation.from_samples(pilot.samples or (), keep_samples=config.keep_samples), 0
    rest = evaluate(model, x, remaining, stream, first_replication=pilot.n_rep, keep_samples=True)
    return pilot.merge(rest, keep_samples=config.keep_samples), remaining


def run_trial(
    state: SearchState,
    config: TesoConfig,
    model: StochasticObjective,
    space: DecisionSpace,
    run_stream: Stream,
) -> TrialRecord:
    """Advance ``state`` by one trial (``state.t`` must already hold the trial index)."""
    t = state.t
    rng = generator(derive(run_stream, t, GENERATE))
    eval_stream = derive(run_stream, t, EVALUATE)

    eta_used = state.eta
    x, mode = generate_candidate(state, config, space, rng)
    key = make_key(x, space, config.bin_width, config.representation)

    status = TrialStatus.EVALUATED
    pilot: Evaluation | None = None
    if state.tabu.contains(key):
        accepted, pilot = aspiration_met(x, state, config, model, eval_stream)
        if pilot is not None:
            state.samples += pilot.n_rep
        if not accepted:
            logger.debug("t=%d: %s is tabu, skipped", t, x)
            return TrialRecord(
                t=t, candidate=x, status=TrialStatus.SKIPPED_TABU, mode=mode,
                best_so_far=state.f_best, eta=eta_used,
            )
        logger.debug("t=%d: %s is tabu but meets aspiration", t, x)
        status = TrialStatus.ASPIRATION_ACCEPTED

    evaluation, drawn = _full_evaluation(x, pilot, config, model, eval_stream)
    state.samples += drawn
    state.evaluations += 1

    if is_improvement(evaluation.mean, state.f_best, config.direction):
        logger.debug("t=%d: improvement %.6g -> %.6g at %s", t, state.f_best, evaluation.mean, x)
        state.f_best = evaluation.mean
        state.x_best = x
        state.dt = 0
    elif t > config.n_init:
        state.dt += 1

    state.tabu.insert(key)
    state.elite.insert(x, evaluation.mean)
    state.eta = update_noise(
        t, config.budget, config.eta_init, config.eta_final, config.noise_schedule
    )
    return TrialRecord(
        t=t, candidate=x, status=status, mode=mode, best_so_far=state.f_best,
        eta=eta_used, mean=evaluation.mean, std=evaluation.std,
    )


class TesoOptimizer(BaseOptimizer):
    """Tabu list + elite memory + decaying perturbation noise.

    The ablations reuse this class: ``disable_tabu`` runs with a zero-capacity
    tabu list, ``disable_elite`` intensifies around the incumbent instead of
    the elite archive.
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
        state = SearchState.initial(config)
        terminated_early = False
        logger.info(
            "%s: starting run (budget=%d, n_rep=%d, C_T=%d, C_E=%d)",
            self.name, config.budget, config.n_rep,
            config.effective_tabu_capacity, config.elite_capacity,
        )

        for t in range(1, config.budget + 1):
            state.t = t
            try:
                record = run_trial(state, config, model, space, run_stream)
            except Exception as e:
                logger.error("%s: run aborted at trial %d: %s", self.name, t, e)
                raise
            state.trace.append(record)
            if record.evaluated and state.dt >= config.dt_max:
                terminated_early = t < config.budget
                logger.info(
                    "%s: no improvement for %d trials, stopping at t=%d", self.name, state.dt, t
                )
                break

        if state.x_best is None:
            raise OptimizationError("No candidate was evaluated")
        skipped = sum(r.status is TrialStatus.SKIPPED_TABU for r in state.trace)
        result = OptimizationResult(
            x_best=state.x_best,
            f_best=state.f_best,
            trials_used=len(state.trace),
            evaluations_used=state.evaluations,
            terminated_early=terminated_early,
            trace=state.trace,
            samples_used=state.samples,
            skipped_tabu=skipped,
            aspiration_accepted=sum(
                r.status is TrialStatus.ASPIRATION_ACCEPTED for r in state.trace
            ),
        )
        logger.info(
            "%s: finished after %d trials, f_best=%.6g at %s",
            self.name, result.trials_used, result.f_best, result.x_best,
        )
        return result


def run(
    config: TesoConfig,
    model: StochasticObjective,
    space: DecisionSpace,
    stream: Stream | None = None,
) -> OptimizationResult:
    """Single TESO run with the given configuration."""
    return TesoOptimizer(config, name="TESO").run(model, space, stream)
