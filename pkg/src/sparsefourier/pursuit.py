"""Greedy pursuit: isolate a tone, identify it, estimate it, subtract it.

Each iteration estimates the residual's energy for the stopping test, builds
a small family of randomly dilated/modulated filtered views of the residual,
runs the frequency-identification recursion on each member, scores the
candidate frequencies by coarse coefficient estimates, and folds the winner's
refined coefficient into the representation.  The final representation is
pruned to the B largest-magnitude terms.

Two operating modes differ only in how missing samples are handled: ``greedy``
rejects any evaluation point whose convolution support is incomplete, while
``interpolated`` fills gaps with quadratic Lagrange interpolation — the only
workable option at sparse availability.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .access import InterpolatingAccess, SampleAccess
from .estimators import (EstimatorConfig, estimate_coefficient,
                         estimate_norm_greedy, estimate_norm_interpolated)
from .group_testing import FrequencyNotFound, group_test
from .isolation import PlainResidual, build_isolation_family
from .signal import AvailabilityExhausted, Representation, SampledSignal

__all__ = ["PursuitConfig", "PursuitReport", "iteration_budget",
           "stopping_test", "recover"]

#: Coarse accuracy used to rank competing candidate frequencies cheaply.
COARSE_EPSILON = 0.25


@dataclass(frozen=True)
class PursuitConfig:
    """Sparsity target plus accuracy/confidence and loop-shape knobs.

    ``q1`` is the wide-filter half-width used for isolation; the small default
    keeps the convolution support tiny, which is what makes fully available
    supports findable at moderate availability.  ``stop_threshold`` of None
    means iota = epsilon * (residual-energy estimate at iteration 0).
    """

    b: int
    epsilon: float = 0.1
    delta: float = 0.05
    iter_budget: int = 200
    stop_threshold: float | None = None
    mode: str = "greedy"
    q1: int = 1
    family_size: int = 4
    interval_count: int = 16

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("b must be >= 1")
        if self.iter_budget < 1:
            raise ValueError("iter_budget must be >= 1")
        if self.mode not in ("greedy", "interpolated"):
            raise ValueError("mode must be 'greedy' or 'interpolated'")


@dataclass(frozen=True)
class PursuitReport:
    """Recovery output plus the observables the experiment tables report."""

    representation: Representation
    iterations_used: int
    samples_touched: int
    time_total: float
    time_wo_sampling: float
    trace: list = field(default_factory=list)
    incomplete: bool = False


def iteration_budget(b: int, n: int, delta: float, epsilon: float) -> int:
    """ceil(B * ln(N) * ln(1/delta) / epsilon^2)."""
    return math.ceil(b * math.log(n) * math.log(1.0 / delta) / epsilon ** 2)


def stopping_test(residual_norm_estimate: float, iota: float) -> bool:
    """True iff the estimate is strictly below the user threshold."""
    if residual_norm_estimate < 0:
        raise ValueError("norm estimate must be >= 0")
    return residual_norm_estimate < iota


def recover(data: SampledSignal, cfg: PursuitConfig,
            rng: np.random.Generator) -> PursuitReport:
    t_start = time.perf_counter()
    n = data.n
    if cfg.mode == "interpolated":
        window = math.ceil(3.0 / data.mask.p_hat) * 4
        access: SampleAccess = InterpolatingAccess(data, window)
        norm_est = estimate_norm_interpolated
    else:
        access = SampleAccess(data)
        norm_est = estimate_norm_greedy

    est_cfg = EstimatorConfig(epsilon=cfg.epsilon, delta=cfg.delta)
    coarse_cfg = EstimatorConfig(epsilon=max(cfg.epsilon, COARSE_EPSILON),
                                 delta=cfg.delta)
    # the stopping test evaluates the bare residual (support size 1), so extra
    # repetitions are nearly free and keep a noisy percentile from stopping
    # the pursuit with modes still unrecovered
    stop_cfg = EstimatorConfig(epsilon=cfg.epsilon, delta=cfg.delta,
                               norm_reps=max(24, est_cfg.norm_reps),
                               max_group_tries=1000)
    budget = min(iteration_budget(cfg.b, n, cfg.delta, cfg.epsilon),
                 cfg.iter_budget)

    rep = Representation(n)
    trace: list[tuple] = []
    iota = cfg.stop_threshold
    stopped = False
    iterations = 0

    for it in range(budget):
        iterations = it + 1
        res_est = norm_est(PlainResidual(access, rep), stop_cfg, rng)
        if iota is None and not res_est.low_confidence:
            iota = cfg.epsilon * res_est.value
        # a truncated estimate says little about the residual; never stop on it
        if iota is not None and not res_est.low_confidence \
                and stopping_test(res_est.value, iota):
            stopped = True
            iterations = it
            break

        family = build_isolation_family(access, rep, cfg.family_size,
                                         cfg.q1, rng)
        candidates: list[int] = []
        for member in family:
            try:
                w = group_test(member, est_cfg, rng,
                               norm_estimator=norm_est,
                               interval_count=cfg.interval_count)
            except FrequencyNotFound:
                continue
            if w not in candidates:
                candidates.append(w)
        if not candidates:
            trace.append((None, 0.0 + 0.0j, res_est.value))
            continue

        try:
            coarse = [estimate_coefficient(access, rep, w, coarse_cfg, rng)
                      for w in candidates]
            # largest coarse magnitude wins; ties toward lower frequency
            best = min(range(len(candidates)),
                       key=lambda k: (-abs(coarse[k]), candidates[k]))
            w_star = candidates[best]
            coef = estimate_coefficient(access, rep, w_star, est_cfg, rng)
        except AvailabilityExhausted:
            trace.append((None, 0.0 + 0.0j, res_est.value))
            continue
        rep = rep.with_term(w_star, coef)
        trace.append((w_star, coef, res_est.value))

    total = time.perf_counter() - t_start
    return PursuitReport(
        representation=rep.pruned(cfg.b),
        iterations_used=iterations,
        samples_touched=access.samples_touched,
        time_total=total,
        time_wo_sampling=max(0.0, total - access.sampling_seconds),
        trace=trace,
        incomplete=not stopped,
    )
