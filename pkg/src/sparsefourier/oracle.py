"""Brute-force ground truth: dense DFT, optimal truncation, exact L2 errors.

Everything here is O(n^2) or O(n*B) on purpose — trivially auditable, no FFT
dependency — and is used only for synthesis-side verification.  The recovery
path never calls into this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .signal import FullSignal, Representation

__all__ = ["Spectrum", "full_dft", "optimal_b_term", "l2_error", "ORACLE_CAP"]

#: full_dft refuses lengths above this (O(n^2) work).
ORACLE_CAP = 2 ** 16


@dataclass(frozen=True)
class Spectrum:
    """All n Fourier coefficients of a signal."""

    n: int
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.complex128)
        if c.shape != (self.n,):
            raise ValueError("coefficients must have shape (n,)")
        object.__setattr__(self, "coefficients", c)


def full_dft(signal: FullSignal, cap: int = ORACLE_CAP) -> Spectrum:
    """All n coefficients by direct summation."""
    n = signal.n
    if n > cap:
        raise ValueError(f"oracle cap exceeded: {n} > {cap}")
    t = np.arange(n)
    # row omega, column t
    kernel = np.exp(-2j * np.pi * np.outer(t, t) / n) / math.sqrt(n)
    return Spectrum(n=n, coefficients=kernel @ signal.values)


def optimal_b_term(spec: Spectrum, b: int) -> Representation:
    """The b largest-|coefficient| terms; ties broken by lower frequency."""
    if not 1 <= b <= spec.n:
        raise ValueError("need 1 <= b <= n")
    freqs = np.arange(spec.n, dtype=np.int64)
    keep = np.lexsort((freqs, -np.abs(spec.coefficients)))[:b]
    keep = np.sort(keep)
    return Representation(spec.n, freqs[keep], spec.coefficients[keep])


def l2_error(signal: FullSignal, rep: Representation) -> float:
    """Exact sum_t |S(t) - R(t)|^2."""
    if signal.n != rep.n:
        raise ValueError("length mismatch")
    diff = signal.values - rep.evaluate(np.arange(signal.n))
    return float(np.sum(np.abs(diff) ** 2))
