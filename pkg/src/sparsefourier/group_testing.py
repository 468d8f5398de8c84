"""Recursive frequency identification on an isolated residual tone.

Each level scores ``interval_count`` coarse modulations of the signal by
estimated filtered energy, labels an interval "large" when it strictly beats
every interval in the opposing arc, re-centers the winning band at zero by
modulation, zooms in by dilation, and recurses until the accumulated zoom
covers the whole spectrum.  Unwinding the recursion with the per-level
(band-center, zoom) pairs reconstructs the tone's frequency.

The per-level norm estimations are driven by deterministic substreams indexed
by (level, interval), so a fixed master seed gives a fixed answer regardless
of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .estimators import EstimatorConfig, NormEstimate, estimate_norm_greedy
from .isolation import IsolationSignal

__all__ = ["MsbResult", "FrequencyNotFound", "msb", "group_test"]


class FrequencyNotFound(RuntimeError):
    """The recursion could not localize a tone (caller retries elsewhere)."""


@dataclass(frozen=True)
class MsbResult:
    """Most significant bit of a level: band center index v (in units of
    n/interval_count, may be half-integer for even runs) and run length c."""

    v: float
    c: int
    fallback: bool = False

    def __post_init__(self):
        if not 1 <= self.c <= 16:
            raise ValueError("c must lie in [1, 16]")


def _dominance_offsets(interval_count: int) -> range:
    # opposing arc: intervals at circular distance ~[IC/4, 3*IC/4]
    lo = max(1, round(interval_count / 4))
    return range(lo, interval_count - lo + 1)


def _longest_cyclic_run(large: np.ndarray, energies: np.ndarray) -> tuple[int, int]:
    """(start, length) of the longest run of True, cyclically; ties broken by
    the run's total energy."""
    ic = len(large)
    if large.all():
        return 0, ic
    best = None  # (length, total_energy, -start) maximized
    start = None
    doubled = np.concatenate([large, large])
    for i in range(2 * ic):
        if doubled[i] and (i == 0 or not doubled[i - 1]):
            start = i
        if doubled[i] and (i == 2 * ic - 1 or not doubled[i + 1]) and start is not None:
            s, length = start % ic, min(i - start + 1, ic)
            if s + length <= ic:
                total = float(energies[s:s + length].sum())
            else:
                total = float(energies[s:].sum() + energies[:(s + length) % ic].sum())
            key = (length, total, -s)
            if s < ic and (best is None or key > best[0]):
                best = (key, (s, length))
    if best is None:
        raise ValueError("no run found")
    return best[1]


def msb(
    sig: IsolationSignal,
    cfg: EstimatorConfig,
    rng_for: "callable",
    norm_estimator=estimate_norm_greedy,
    interval_count: int = 16,
) -> MsbResult:
    """One level of interval scoring.

    ``rng_for(j)`` supplies the estimator substream for interval j.  Labels
    interval l large iff its energy strictly exceeds every energy in the
    opposing arc; returns the longest cyclic run's center and length.  A run
    shorter than interval_count/2 (or no large interval at all) falls back to
    the argmax-energy interval with the conservative length interval_count/2.

    Raises :class:`FrequencyNotFound` when fewer than interval_count/4 of the
    interval energies are backed by at least one usable sample — there is no
    point zooming on pure guesswork.
    """
    if not 3 <= interval_count <= 16:
        raise ValueError("interval_count must lie in [3, 16]")
    ic = interval_count
    estimates: list[NormEstimate] = []
    for j in range(ic):
        member = sig.with_j16(j * 16.0 / ic)
        estimates.append(norm_estimator(member, cfg, rng_for(j)))
    usable = sum(1 for e in estimates if e.samples_used >= 1)
    if usable < max(1, ic // 4):
        raise FrequencyNotFound(
            f"only {usable}/{ic} interval energies had any usable sample"
        )
    energies = np.array([e.value for e in estimates])
    offsets = _dominance_offsets(ic)
    large = np.array([
        all(energies[l] > energies[(l + o) % ic] for o in offsets)
        for l in range(ic)
    ])
    half = ic // 2
    if not large.any():
        return MsbResult(v=float(np.argmax(energies)), c=half, fallback=True)
    start, length = _longest_cyclic_run(large, energies)
    if length < half:
        return MsbResult(v=float(np.argmax(energies)), c=half, fallback=True)
    v = (start + (length - 1) / 2.0) % ic
    return MsbResult(v=v, c=min(length, ic), fallback=False)


def group_test(
    sig: IsolationSignal,
    cfg: EstimatorConfig,
    rng: np.random.Generator,
    norm_estimator=estimate_norm_greedy,
    interval_count: int = 16,
    max_depth: int | None = None,
) -> int:
    """Frequency of the dominant tone of ``sig``, in [0, n).

    Raises :class:`FrequencyNotFound` if the recursion exceeds its depth cap
    or an interval-scoring level is starved of samples.
    """
    n = sig.n
    ic = interval_count
    if max_depth is None:
        max_depth = math.ceil(math.log2(n)) + 4
    base_entropy = int(rng.integers(np.iinfo(np.int64).max))

    def recurse(cur: IsolationSignal, q: int, depth: int) -> int:
        if q >= n:
            return 0
        if depth > max_depth:
            raise FrequencyNotFound(f"depth cap {max_depth} exceeded")

        def rng_for(j: int) -> np.random.Generator:
            return np.random.default_rng((base_entropy, depth, j))

        res = msb(cur, cfg, rng_for, norm_estimator, ic)
        # zoom factor: at least 2 to make progress, bumped to odd so the
        # accumulated dilation stays invertible mod n (a power of two) —
        # an even factor would fold frequencies together and, worse, strand
        # the deep recursion levels on a vanishing set of sample positions
        d = max(2, ic // res.c)
        if d % 2 == 0:
            d += 1
        # recenter on the winning band: the coarse modulation exp(2*pi*1j*j*t/16)
        # peaks at the grid point v*n/ic itself, so that is the band center;
        # the unwind must add back exactly the integer modulation applied
        m = math.floor(res.v * n / ic) % n
        g = recurse(cur.modulated(m).dilated(d), q * d, depth + 1)
        if g > n // 2:
            g -= n
        return (math.floor(g / d + 0.5) + m) % n

    return recurse(sig, 1, 0)
