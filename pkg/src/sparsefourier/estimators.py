"""Randomized estimators: median-of-means coefficients, percentile norms.

Coefficient estimation averages ``m_inner`` single-sample kernels within each
of ``n_outer`` groups and takes the coordinatewise median across groups;
drawing sample positions uniformly over the *available* indices supplies the
inverse-availability weighting that makes each kernel unbiased for the
masked-signal coefficient.

Norm estimation returns the nearest-rank 60th percentile of n*|H(t_k)|^2 over
randomly placed filtered-signal evaluations; for a 95%-pure signal this
exceeds ||H||^2 / 3 with probability 1 - delta at the default repetition
count.  The greedy variant accepts a draw only when the whole convolution
support is available; the interpolated variant fills gaps instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .access import SampleAccess
from .interpolation import InterpolationImpossible
from .signal import AvailabilityExhausted, Representation

__all__ = [
    "EstimatorConfig",
    "NormEstimate",
    "default_n_outer",
    "default_m_inner",
    "default_norm_reps",
    "default_max_tries",
    "default_max_group_tries",
    "nearest_rank_percentile",
    "estimate_coefficient",
    "estimate_norm_greedy",
    "estimate_norm_interpolated",
]

#: Hard cap on per-slot search loops, regardless of how hopeless p makes them.
GROUP_TRIES_CAP = 10_000


def default_n_outer(delta: float) -> int:
    return max(1, math.ceil(2.0 * math.log(1.0 / delta)))


def default_m_inner(epsilon: float) -> int:
    return max(1, math.ceil(8.0 / epsilon ** 2))


def default_norm_reps(delta: float) -> int:
    return max(1, math.ceil(1.2 * math.log(1.0 / delta)))


def default_max_tries(p_hat: float, delta: float) -> int:
    """Tries k with (1-p)^k <= delta: success at least once w.p. 1 - delta."""
    if p_hat >= 1.0:
        return 1
    return max(1, math.ceil(math.log(delta) / math.log(1.0 - p_hat)))


def default_max_group_tries(p_hat: float, support_size: int, delta: float) -> int:
    """Per-slot bound for finding a fully available size-s support, capped."""
    if p_hat >= 1.0:
        return 1
    q = p_hat ** support_size
    if q <= 1e-12:
        return GROUP_TRIES_CAP
    return min(GROUP_TRIES_CAP, max(1, math.ceil(math.log(delta) / math.log(1.0 - q))))


@dataclass(frozen=True)
class EstimatorConfig:
    """Accuracy/confidence targets plus repetition counts and loop bounds.

    Counts left as None are filled from (epsilon, delta) by the standard
    formulas; the two availability-search bounds additionally depend on the
    observed availability ratio and are resolved at the call site when None.
    """

    epsilon: float
    delta: float
    n_outer: int | None = None
    m_inner: int | None = None
    norm_reps: int | None = None
    max_tries: int | None = None
    max_group_tries: int | None = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1 or not 0 < self.delta < 1:
            raise ValueError("epsilon and delta must lie in (0, 1)")
        if self.n_outer is None:
            object.__setattr__(self, "n_outer", default_n_outer(self.delta))
        if self.m_inner is None:
            object.__setattr__(self, "m_inner", default_m_inner(self.epsilon))
        if self.norm_reps is None:
            object.__setattr__(self, "norm_reps", default_norm_reps(self.delta))
        for name in ("n_outer", "m_inner", "norm_reps"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    def resolve_max_tries(self, p_hat: float) -> int:
        return self.max_tries if self.max_tries is not None else \
            default_max_tries(p_hat, self.delta)

    def resolve_max_group_tries(self, p_hat: float, support_size: int) -> int:
        return self.max_group_tries if self.max_group_tries is not None else \
            default_max_group_tries(p_hat, support_size, self.delta)


@dataclass(frozen=True)
class NormEstimate:
    """Percentile norm estimate; low_confidence marks short sample sequences."""

    value: float
    samples_used: int
    low_confidence: bool


def nearest_rank_percentile(values: np.ndarray, q: float) -> float:
    """Nearest-rank q-th percentile: sorted value at ceil(q/100 * M)."""
    v = np.sort(np.asarray(values, dtype=float))
    if len(v) == 0:
        raise ValueError("percentile of empty sequence")
    rank = max(1, math.ceil(q / 100.0 * len(v)))
    return float(v[rank - 1])


def _draw_accepted(access: SampleAccess, rng, count: int, budget: int) -> np.ndarray:
    """Rejection-sample ``count`` uniform available indices within ``budget``
    total draws; raises AvailabilityExhausted otherwise."""
    accepted: list[np.ndarray] = []
    got, spent = 0, 0
    while got < count:
        if spent >= budget:
            raise AvailabilityExhausted(
                f"only {got}/{count} available draws within budget {budget}"
            )
        chunk = min(budget - spent, max(64, 2 * (count - got)))
        cand = rng.integers(access.n, size=chunk)
        ok = access.is_available(cand)
        spent += chunk
        hits = cand[ok]
        accepted.append(hits)
        got += len(hits)
    return np.concatenate(accepted)[:count]


def estimate_coefficient(
    access: SampleAccess,
    minus_rep: Representation,
    omega: int,
    cfg: EstimatorConfig,
    rng: np.random.Generator,
) -> complex:
    """Median of n_outer group means of the single-sample coefficient kernel
    k(t) = sqrt(n) * (S(t) - R(t)) * exp(-2*pi*1j*omega*t/n)."""
    n = access.n
    total = cfg.n_outer * cfg.m_inner
    budget = cfg.resolve_max_tries(access.p_hat) * total
    ts = _draw_accepted(access, rng, total, budget)
    vals = access.gather(ts)
    if len(minus_rep):
        vals = vals - minus_rep.evaluate(ts)
    kern = math.sqrt(n) * vals * np.exp(-2j * np.pi * omega * ts / n)
    means = kern.reshape(cfg.n_outer, cfg.m_inner).mean(axis=1)
    return complex(np.median(means.real), np.median(means.imag))


def _find_supported_index(h, access, rng, max_group_tries: int) -> int | None:
    """One t whose whole convolution support is available, or None."""
    n = access.n
    offsets = h.support_offsets()[None, :]
    scale = h.support_scale
    spent = 0
    while spent < max_group_tries:
        chunk = min(max_group_tries - spent, 128)
        cand = rng.integers(n, size=chunk)
        idx = (scale * cand[:, None] - offsets) % n
        ok = access.availability_matrix(idx).all(axis=1)
        spent += chunk
        hits = np.flatnonzero(ok)
        if len(hits):
            return int(cand[hits[0]])
    return None


def estimate_norm_greedy(h, cfg: EstimatorConfig,
                         rng: np.random.Generator) -> NormEstimate:
    """60th percentile of n*|H(t_k)|^2 over fully available supports.

    Each of the norm_reps slots searches up to max_group_tries random t for a
    fully available support; the first failed slot stops the search and the
    estimate falls back to the samples gathered so far (flagged).  An empty
    sequence yields value 0, flagged.
    """
    access = h.access
    n = access.n
    support_size = len(np.unique(h.support_offsets() % n))
    max_group_tries = cfg.resolve_max_group_tries(access.p_hat, support_size)
    ts = []
    for _ in range(cfg.norm_reps):
        t = _find_supported_index(h, access, rng, max_group_tries)
        if t is None:
            break
        ts.append(t)
    if not ts:
        return NormEstimate(value=0.0, samples_used=0, low_confidence=True)
    samples = n * np.abs(h.eval_batch(np.array(ts, dtype=np.int64))) ** 2
    return NormEstimate(
        value=nearest_rank_percentile(samples, 60.0),
        samples_used=len(ts),
        low_confidence=len(ts) < cfg.norm_reps,
    )


def estimate_norm_interpolated(h, cfg: EstimatorConfig,
                               rng: np.random.Generator) -> NormEstimate:
    """60th percentile of n*|H(t_k)|^2 with Lagrange-filled gaps.

    Draws exactly norm_reps positions; a position whose support cannot be
    fully interpolated is skipped (flagging the estimate)."""
    access = h.access
    n = access.n
    ts = rng.integers(n, size=cfg.norm_reps).astype(np.int64)
    try:
        values = h.eval_batch(ts)
        used = len(ts)
    except InterpolationImpossible:
        kept, vals = [], []
        for t in ts:
            try:
                vals.append(h.eval_batch(np.array([t], dtype=np.int64))[0])
                kept.append(t)
            except InterpolationImpossible:
                continue
        if not kept:
            return NormEstimate(value=0.0, samples_used=0, low_confidence=True)
        values = np.array(vals)
        used = len(kept)
    samples = n * np.abs(values) ** 2
    return NormEstimate(
        value=nearest_rank_percentile(samples, 60.0),
        samples_used=used,
        low_confidence=used < cfg.norm_reps,
    )
