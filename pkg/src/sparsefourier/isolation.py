"""Filtered, modulated, dilated views of the residual, evaluated lazily.

An :class:`IsolationSignal` is a recipe, not an array: evaluating one point
touches at most ``3*(2*q1+1)`` data samples.  Random wide-filter dilation and
modulation scatter the passband so that, with a few independent draws, each
significant residual tone dominates at least one family member.

The frequency-identification recursion transforms these views further:
``modulated(m)`` shifts every tone down by m, ``dilated(d)`` zooms the
spectrum by d.  Both are pure bookkeeping on two accumulators (signal
dilation ``alpha``, modulation ``mu``); the narrow box-car taps absorb them
at evaluation time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .access import SampleAccess
from .boxcar import NARROW_HALF_WIDTH
from .signal import Representation

__all__ = ["IsolationSignal", "PlainResidual", "build_isolation_family"]


@dataclass(frozen=True)
class IsolationSignal:
    """One family member: wide box-car (dilation sigma, modulation theta)
    convolved with the residual S - R, then narrow box-car with coarse
    modulation j16, under accumulated signal dilation alpha and modulation mu.

    For a tone at frequency w in the residual, this view places it at
    ``alpha * (w - mu_raw)`` — tracked externally by the recursion; here we
    only evaluate.  ``alpha`` may be even (it is a product of zoom factors).
    """

    access: SampleAccess
    rep: Representation
    q1: int
    sigma: int
    theta: int
    alpha: int = 1
    mu: int = 0
    j16: int = 0

    def __post_init__(self):
        if self.sigma % 2 == 0:
            raise ValueError("wide-filter dilation must be odd")
        if self.q1 < 1:
            raise ValueError("q1 must be >= 1")

    @property
    def n(self) -> int:
        return self.access.n

    # -- recursion bookkeeping ------------------------------------------------

    def modulated(self, m: int) -> "IsolationSignal":
        """Multiply by exp(-2*pi*1j*m*t/n): every tone shifts down by m."""
        return replace(self, mu=(self.mu + m) % self.n)

    def dilated(self, d: int) -> "IsolationSignal":
        """Substitute t -> d*t: every tone at w moves to d*w (mod n)."""
        return replace(self, alpha=(self.alpha * d) % self.n,
                       mu=(self.mu * d) % self.n)

    def with_j16(self, j: int) -> "IsolationSignal":
        return replace(self, j16=j % 16)

    # -- evaluation -----------------------------------------------------------

    def support_offsets(self) -> np.ndarray:
        """Offsets o with support(t) = (alpha*t - o) mod n, row-major (i, j)."""
        i = np.arange(-NARROW_HALF_WIDTH, NARROW_HALF_WIDTH + 1)
        j = np.arange(-self.q1, self.q1 + 1)
        return (self.alpha * i[:, None] + self.sigma * j[None, :]).ravel()

    @property
    def support_scale(self) -> int:
        return self.alpha

    def support(self, t: int) -> np.ndarray:
        return (self.alpha * t - self.support_offsets()) % self.n

    def eval_batch(self, ts: np.ndarray) -> np.ndarray:
        """H(t) for each t in ts; raises if a needed sample is unavailable
        (plain access) or uninterpolable (interpolating access)."""
        n = self.n
        ts = np.asarray(ts, dtype=np.int64)
        idx = (self.alpha * ts[:, None] - self.support_offsets()[None, :]) % n
        vals = self.access.gather(idx)
        if len(self.rep):
            vals = vals - self.rep.evaluate(idx)
        width = 2 * self.q1 + 1
        vals = vals.reshape(len(ts), 3, width)
        i = np.arange(-NARROW_HALF_WIDTH, NARROW_HALF_WIDTH + 1)
        j = np.arange(-self.q1, self.q1 + 1)
        w_narrow = (math.sqrt(n) / 3.0) * np.exp(
            2j * np.pi * (self.j16 * i / 16.0 + self.mu * i / n)
        )
        w_wide = (math.sqrt(n) / width) * np.exp(
            2j * np.pi * self.theta * (self.sigma * j) / n
        )
        out = np.einsum("i,mij,j->m", w_narrow, vals, w_wide)
        return out * np.exp(-2j * np.pi * self.mu * ts / n)


@dataclass(frozen=True)
class PlainResidual:
    """Unfiltered residual view (support {t}); drives the stopping test."""

    access: SampleAccess
    rep: Representation

    @property
    def n(self) -> int:
        return self.access.n

    def support_offsets(self) -> np.ndarray:
        return np.zeros(1, dtype=np.int64)

    @property
    def support_scale(self) -> int:
        return 1

    def eval_batch(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=np.int64)
        vals = self.access.gather(ts)
        if len(self.rep):
            vals = vals - self.rep.evaluate(ts)
        return vals


def build_isolation_family(
    access: SampleAccess,
    rep: Representation,
    family_size: int,
    q1: int,
    rng: np.random.Generator,
) -> list[IsolationSignal]:
    """family_size members with independent random odd dilation and modulation."""
    if family_size < 1:
        raise ValueError("family_size must be >= 1")
    n = access.n
    members = []
    for _ in range(family_size):
        sigma = int(rng.integers(n // 2)) * 2 + 1  # odd in [1, n)
        theta = int(rng.integers(n))
        members.append(
            IsolationSignal(access=access, rep=rep, q1=q1, sigma=sigma, theta=theta)
        )
    return members
