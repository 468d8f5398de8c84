"""Box-car filters, dilation/modulation chains, and pointwise filtered evaluation.

Filtering here is strictly on-demand: evaluating one output point of the
double convolution touches at most ``3 * (2*q1 + 1)`` input samples, which is
what keeps the whole recovery sublinear.  A dilated box-car places its taps at
``dilation * tap_index`` (mod n) with the nominal box-car weight, and any
modulation rides the taps at their dilated positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "Boxcar",
    "FilterChain",
    "MissingSampleError",
    "boxcar_time",
    "boxcar_freq",
    "convolution_support",
    "chain_offsets",
    "chain_weights",
    "eval_filtered_sample",
]

#: Practical default for the wide filter half-width (width 21).
DEFAULT_WIDE_HALF_WIDTH = 10

#: The narrow filter is fixed at half-width 1 (width 3).
NARROW_HALF_WIDTH = 1


class MissingSampleError(KeyError):
    """A required source index is unavailable; no partial sum is returned."""


@dataclass(frozen=True)
class Boxcar:
    """Width-(2k+1) rectangle of height sqrt(n)/(2k+1)."""

    half_width: int
    n: int

    def __post_init__(self):
        if self.half_width < 0 or 2 * self.half_width + 1 > self.n:
            raise ValueError("need 0 <= 2k+1 <= n")


@dataclass(frozen=True)
class FilterChain:
    """Narrow (half-width 1) and wide (half-width q1) box-cars with dilations.

    ``sigma1`` dilates the narrow filter, ``sigma2`` the wide one; ``sigma3``
    dilates the wide-filtered signal before the narrow convolution and
    ``sigma4`` the final output.  ``theta`` modulates the wide taps, ``j16``
    is the coarse 1/16-turn modulation on the narrow taps.  ``sigma1`` and
    ``sigma2`` must be odd so they permute frequencies; ``sigma3``/``sigma4``
    may be even (zoom factors fold the spectrum on purpose).
    """

    n: int
    q1: int = DEFAULT_WIDE_HALF_WIDTH
    sigma1: int = 1
    sigma2: int = 1
    sigma3: int = 1
    sigma4: int = 1
    theta: int = 0
    j16: int = 0

    def __post_init__(self):
        if self.q1 < 1:
            raise ValueError("q1 must be >= 1")
        for name in ("sigma1", "sigma2"):
            s = getattr(self, name)
            if s % 2 == 0 or not 1 <= s < self.n:
                raise ValueError(f"{name} must be odd and in [1, n)")
        if not 0 <= self.theta < self.n:
            raise ValueError("theta must lie in [0, n)")

    def with_j16(self, j: int) -> "FilterChain":
        return replace(self, j16=j % 16)


def boxcar_time(k: int, t: int, n: int) -> float:
    """chi_k(t): sqrt(n)/(2k+1) for |t| <= k (t reduced to (-n/2, n/2]), else 0."""
    t = t % n
    if t > n // 2:
        t -= n
    return math.sqrt(n) / (2 * k + 1) if -k <= t <= k else 0.0


def boxcar_freq(k: int, omega, n: int):
    """Spectrum of chi_k: sin((2k+1)*pi*w/n) / ((2k+1)*sin(pi*w/n)), 1 at w=0.

    Accepts scalar or array ``omega``.
    """
    w = np.asarray(omega, dtype=np.float64)
    x = np.pi * w / n
    denom = (2 * k + 1) * np.sin(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(np.abs(denom) < 1e-300, 1.0, np.sin((2 * k + 1) * x) / denom)
    return out if np.ndim(omega) else float(out)


def chain_offsets(chain: FilterChain) -> np.ndarray:
    """Flat tap-offset grid: support(t) = sigma3*sigma4*t - offsets (mod n).

    Offsets are ``sigma3*sigma1*i + sigma2*j`` laid out row-major over
    ``i in {-1,0,1}`` and ``j in {-q1..q1}``.
    """
    i = np.arange(-NARROW_HALF_WIDTH, NARROW_HALF_WIDTH + 1)
    j = np.arange(-chain.q1, chain.q1 + 1)
    return (chain.sigma3 * chain.sigma1 * i[:, None] + chain.sigma2 * j[None, :]).ravel()


def chain_weights(chain: FilterChain) -> tuple[np.ndarray, np.ndarray]:
    """(narrow, wide) complex tap weights, modulations applied at tap positions."""
    n = chain.n
    i = np.arange(-NARROW_HALF_WIDTH, NARROW_HALF_WIDTH + 1)
    j = np.arange(-chain.q1, chain.q1 + 1)
    w_narrow = (math.sqrt(n) / 3.0) * np.exp(
        2j * np.pi * chain.j16 * (chain.sigma1 * i) / 16.0
    )
    w_wide = (math.sqrt(n) / (2 * chain.q1 + 1)) * np.exp(
        2j * np.pi * chain.theta * (chain.sigma2 * j) / n
    )
    return w_narrow, w_wide


def convolution_support(t: int, chain: FilterChain) -> np.ndarray:
    """Sorted distinct source indices needed to evaluate the chain at t."""
    n = chain.n
    idx = (chain.sigma3 * chain.sigma4 * t - chain_offsets(chain)) % n
    return np.unique(idx)


def eval_filtered_sample(source, chain: FilterChain, t: int,
                         extra_narrow_mod: int = 0) -> complex:
    """One output point of the modulated, dilated double box-car convolution.

    ``source`` maps an int64 index array to complex values and must raise
    (e.g. :class:`MissingSampleError`) if any index is unavailable.
    ``extra_narrow_mod`` adds a fine modulation exp(2j*pi*m*i/n) on the
    narrow taps; the group-test recursion uses it to fold accumulated
    modulation into the chain.
    """
    n = chain.n
    idx = (chain.sigma3 * chain.sigma4 * t - chain_offsets(chain)) % n
    vals = np.asarray(source(idx), dtype=np.complex128).reshape(3, 2 * chain.q1 + 1)
    w_narrow, w_wide = chain_weights(chain)
    if extra_narrow_mod:
        i = np.arange(-NARROW_HALF_WIDTH, NARROW_HALF_WIDTH + 1)
        w_narrow = w_narrow * np.exp(2j * np.pi * extra_narrow_mod * i / n)
    return complex(w_narrow @ (vals @ w_wide))
