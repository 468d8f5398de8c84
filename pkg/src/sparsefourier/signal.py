"""Signal model, DFT conventions, synthesis, masking, and sample file I/O.

Conventions used throughout the package:

* signals are periodic with length ``n`` a power of two; all index
  arithmetic is mod ``n``;
* the Fourier basis is orthonormal, ``phi_w(t) = exp(2*pi*1j*w*t/n)/sqrt(n)``,
  and the forward transform is ``S_hat(w) = sum_t S(t)*conj(phi_w(t))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FullSignal",
    "AvailabilityMask",
    "SampledSignal",
    "Representation",
    "ModeSpec",
    "AvailabilityExhausted",
    "eval_exponential",
    "synthesize",
    "exact_dft",
    "bernoulli_mask",
    "draw_available_index",
    "eval_representation",
    "read_samples",
    "write_samples",
    "read_representation",
    "write_representation",
]


class AvailabilityExhausted(RuntimeError):
    """Raised when random search for an available sample exceeds its budget."""


def _check_power_of_two(n: int) -> None:
    if n < 2 or n & (n - 1):
        raise ValueError(f"signal length must be a power of two, got {n}")


@dataclass(frozen=True)
class FullSignal:
    """Complete length-n complex sample vector (ground truth / oracle use)."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        _check_power_of_two(self.n)
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.n,):
            raise ValueError("values must have shape (n,)")
        object.__setattr__(self, "values", v)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


@dataclass(frozen=True)
class AvailabilityMask:
    """Boolean availability flags for each of the n sample slots."""

    n: int
    flags: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.flags, dtype=bool)
        if f.shape != (self.n,):
            raise ValueError("flags must have shape (n,)")
        object.__setattr__(self, "flags", f)
        if self.available_count == 0:
            raise ValueError("mask must have at least one available index")

    @property
    def available_count(self) -> int:
        return int(np.count_nonzero(self.flags))

    @property
    def p_hat(self) -> float:
        """Empirical availability ratio L/n."""
        return self.available_count / self.n

    def available_indices(self) -> np.ndarray:
        return np.flatnonzero(self.flags)


@dataclass(frozen=True)
class SampledSignal:
    """Availability mask plus sample values at the available indices.

    ``values`` is stored full-length for vectorized gathers; entries at
    unavailable indices are NaN and must never be read directly.
    """

    mask: AvailabilityMask
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.mask.n,):
            raise ValueError("values must have shape (n,)")
        v = v.copy()
        v[~self.mask.flags] = np.nan
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.mask.n

    @classmethod
    def from_full(cls, full: FullSignal, mask: AvailabilityMask) -> "SampledSignal":
        if full.n != mask.n:
            raise ValueError("signal and mask lengths differ")
        return cls(mask=mask, values=full.values)


@dataclass(frozen=True)
class ModeSpec:
    """One pure mode: integer frequency and complex amplitude."""

    frequency: int
    amplitude: complex


@dataclass(frozen=True)
class Representation:
    """Sparse list of (frequency, coefficient) Fourier terms."""

    n: int
    freqs: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    coefs: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.complex128))

    def __post_init__(self):
        f = np.asarray(self.freqs, dtype=np.int64)
        c = np.asarray(self.coefs, dtype=np.complex128)
        if f.shape != c.shape or f.ndim != 1:
            raise ValueError("freqs and coefs must be 1-d arrays of equal length")
        if len(np.unique(f)) != len(f):
            raise ValueError("frequencies must be distinct")
        if len(f) and (f.min() < 0 or f.max() >= self.n):
            raise ValueError("frequencies must lie in [0, n)")
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "coefs", c)

    def __len__(self) -> int:
        return len(self.freqs)

    @property
    def terms(self) -> list[tuple[int, complex]]:
        return [(int(f), complex(c)) for f, c in zip(self.freqs, self.coefs)]

    def coefficient(self, freq: int) -> complex:
        hits = np.flatnonzero(self.freqs == freq)
        return complex(self.coefs[hits[0]]) if len(hits) else 0.0 + 0.0j

    def with_term(self, freq: int, coef: complex) -> "Representation":
        """Add a term; an existing term at the same frequency merges additively."""
        hits = np.flatnonzero(self.freqs == freq)
        if len(hits):
            coefs = self.coefs.copy()
            coefs[hits[0]] += coef
            return Representation(self.n, self.freqs, coefs)
        return Representation(
            self.n,
            np.append(self.freqs, freq),
            np.append(self.coefs, coef),
        )

    def pruned(self, b: int) -> "Representation":
        """Keep the b largest-magnitude terms (ties: lower frequency)."""
        if len(self) <= b:
            return self
        order = np.lexsort((self.freqs, -np.abs(self.coefs)))[:b]
        order = np.sort(order)  # keep insertion order stable
        return Representation(self.n, self.freqs[order], self.coefs[order])

    def evaluate(self, t) -> np.ndarray | complex:
        """Pointwise R(t) = sum_k c_k * phi_{f_k}(t), O(B) per point."""
        t_arr = np.atleast_1d(np.asarray(t, dtype=np.int64))
        if len(self) == 0:
            out = np.zeros(t_arr.shape, dtype=np.complex128)
        else:
            phase = np.exp(
                (2j * np.pi / self.n) * np.multiply.outer(t_arr, self.freqs)
            )
            out = phase @ self.coefs / math.sqrt(self.n)
        return out if np.ndim(t) else complex(out[0])

    def energy(self) -> float:
        """||R||^2, exact by orthonormality of the basis."""
        return float(np.sum(np.abs(self.coefs) ** 2))


def eval_exponential(omega: int, t: int, n: int) -> complex:
    """Orthonormal Fourier basis function phi_omega(t) = exp(2*pi*1j*omega*t/n)/sqrt(n)."""
    if not 0 <= omega < n:
        raise ValueError("omega must lie in [0, n)")
    t = t % n
    return complex(np.exp(2j * np.pi * omega * t / n) / math.sqrt(n))


def synthesize(
    modes: list[ModeSpec],
    n: int,
    noise_sigma: float = 0.0,
    rng: np.random.Generator | None = None,
) -> FullSignal:
    """Superpose pure modes plus damped complex white noise.

    The noise components are i.i.d. complex Gaussian with per-part standard
    deviation ``noise_sigma / sqrt(2n)`` so that E||noise||^2 == noise_sigma**2.
    """
    _check_power_of_two(n)
    freqs = [m.frequency for m in modes]
    if len(set(freqs)) != len(freqs):
        raise ValueError("mode frequencies must be distinct")
    t = np.arange(n)
    values = np.zeros(n, dtype=np.complex128)
    for m in modes:
        values += m.amplitude * np.exp(2j * np.pi * m.frequency * t / n) / math.sqrt(n)
    if noise_sigma > 0:
        if rng is None:
            raise ValueError("rng required when noise_sigma > 0")
        s = noise_sigma / math.sqrt(2 * n)
        values += s * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return FullSignal(n=n, values=values)


def exact_dft(signal: FullSignal, omega: int) -> complex:
    """Definitionally exact S_hat(omega); O(n) work, oracle use only."""
    n = signal.n
    if not 0 <= omega < n:
        raise ValueError("omega must lie in [0, n)")
    t = np.arange(n)
    return complex(
        np.sum(signal.values * np.exp(-2j * np.pi * omega * t / n)) / math.sqrt(n)
    )


def bernoulli_mask(n: int, p: float, rng: np.random.Generator) -> AvailabilityMask:
    """Mask with i.i.d. Bernoulli(p) availability; an all-false draw is redrawn."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    while True:
        flags = rng.random(n) < p
        if flags.any():
            return AvailabilityMask(n=n, flags=flags)


def draw_available_index(
    mask: AvailabilityMask, rng: np.random.Generator, max_tries: int
) -> int:
    """Rejection-sample a uniformly random available index."""
    if max_tries < 1:
        raise ValueError("max_tries must be >= 1")
    for _ in range(max_tries):
        t = int(rng.integers(mask.n))
        if mask.flags[t]:
            return t
    raise AvailabilityExhausted(f"no available index found in {max_tries} tries")


def eval_representation(rep: Representation, t: int) -> complex:
    """Pointwise R(t); O(B) work."""
    return rep.evaluate(t)


# ---------------------------------------------------------------------------
# File formats
#
# Sample file:          "N=<int>" header, then "index,re,im" per available
#                       sample, index ascending.
# Representation file:  "N=<int>" header, then "freq,re,im" per term.
# ---------------------------------------------------------------------------


def write_samples(path, data: SampledSignal) -> None:
    idx = data.mask.available_indices()
    with open(path, "w") as fh:
        fh.write(f"N={data.n}\n")
        for i in idx:
            v = data.values[i]
            fh.write(f"{i},{v.real:.17g},{v.imag:.17g}\n")


def read_samples(path) -> SampledSignal:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("N="):
            raise ValueError(f"bad sample file header: {header!r}")
        n = int(header[2:])
        flags = np.zeros(n, dtype=bool)
        values = np.zeros(n, dtype=np.complex128)
        for line in fh:
            line = line.strip()
            if not line:
                continue
            i_s, re_s, im_s = line.split(",")
            i = int(i_s)
            flags[i] = True
            values[i] = complex(float(re_s), float(im_s))
    return SampledSignal(mask=AvailabilityMask(n=n, flags=flags), values=values)


def write_representation(path, rep: Representation) -> None:
    with open(path, "w") as fh:
        fh.write(f"N={rep.n}\n")
        for f, c in zip(rep.freqs, rep.coefs):
            fh.write(f"{f},{c.real:.17g},{c.imag:.17g}\n")


def read_representation(path) -> Representation:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("N="):
            raise ValueError(f"bad representation file header: {header!r}")
        n = int(header[2:])
        freqs, coefs = [], []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            f_s, re_s, im_s = line.split(",")
            freqs.append(int(f_s))
            coefs.append(complex(float(re_s), float(im_s)))
    return Representation(n=n, freqs=np.array(freqs, dtype=np.int64),
                          coefs=np.array(coefs, dtype=np.complex128))
