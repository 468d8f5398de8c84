"""Instrumented access to sampled data: the only door to the observed values.

Every availability probe and value gather passes through a
:class:`SampleAccess`, which counts touched samples (rejected draws included)
and accumulates the wall time spent in data access.  The benchmark harness
reports total time and total-minus-sampling time from these counters.

:class:`InterpolatingAccess` additionally fills missing source values with
quadratic Lagrange interpolation of the raw signal, caching interpolated
values for the lifetime of the run.
"""

from __future__ import annotations

import time

import numpy as np

from .boxcar import MissingSampleError
from .interpolation import BatchInterpolator, InterpolationImpossible
from .signal import AvailabilityExhausted, SampledSignal

__all__ = ["SampleAccess", "InterpolatingAccess"]


class SampleAccess:
    """Counts samples touched and time spent touching them.

    ``samples_touched`` counts every index whose availability or value is
    inspected, including rejection-sampling misses.
    """

    def __init__(self, data: SampledSignal):
        self.data = data
        self.n = data.n
        self.flags = data.mask.flags
        self.p_hat = data.mask.p_hat
        self.samples_touched = 0
        self.sampling_seconds = 0.0

    # -- instrumentation -----------------------------------------------------

    def _charge(self, count: int, t0: float) -> None:
        self.samples_touched += count
        self.sampling_seconds += time.perf_counter() - t0

    # -- probes and gathers --------------------------------------------------

    def is_available(self, idx: np.ndarray) -> np.ndarray:
        t0 = time.perf_counter()
        out = self.flags[idx]
        self._charge(int(np.size(idx)), t0)
        return out

    def all_available(self, idx: np.ndarray) -> bool:
        t0 = time.perf_counter()
        out = bool(self.flags[idx].all())
        self._charge(int(np.size(idx)), t0)
        return out

    def availability_matrix(self, idx: np.ndarray) -> np.ndarray:
        """Row-wise availability flags for a 2-d index array (batch probes)."""
        t0 = time.perf_counter()
        out = self.flags[idx]
        self._charge(int(idx.size), t0)
        return out

    def gather(self, idx) -> np.ndarray:
        """Values at ``idx``; raises MissingSampleError if any is unavailable."""
        idx = np.asarray(idx, dtype=np.int64)
        t0 = time.perf_counter()
        if not self.flags[idx].all():
            self._charge(int(idx.size), t0)
            raise MissingSampleError("unavailable sample index in gather")
        out = self.data.values[idx]
        self._charge(int(idx.size), t0)
        return out

    def draw_index(self, rng: np.random.Generator, max_tries: int) -> int:
        """Uniform available index by rejection sampling."""
        t0 = time.perf_counter()
        for _ in range(max_tries):
            t = int(rng.integers(self.n))
            self.samples_touched += 1
            if self.flags[t]:
                self.sampling_seconds += time.perf_counter() - t0
                return t
        self.sampling_seconds += time.perf_counter() - t0
        raise AvailabilityExhausted(f"no available index in {max_tries} tries")


class InterpolatingAccess(SampleAccess):
    """SampleAccess whose gathers fill gaps by Lagrange interpolation.

    Interpolation always targets the raw signal (the residual is formed
    downstream by subtracting the exactly-evaluable representation), so
    interpolated values are cached across the whole run.
    """

    def __init__(self, data: SampledSignal, window: int):
        super().__init__(data)
        self.window = window
        self._interp = BatchInterpolator(data.mask, data.values, window)
        self._cache_vals = np.zeros(self.n, dtype=np.complex128)
        self._cache_ok = np.zeros(self.n, dtype=bool)
        self._cache_done = np.zeros(self.n, dtype=bool)

    def gather(self, idx) -> np.ndarray:
        shape = np.shape(idx)
        idx = np.asarray(idx, dtype=np.int64).ravel()
        t0 = time.perf_counter()
        avail = self.flags[idx]
        out = np.where(avail, np.nan_to_num(self.data.values[idx]), 0.0 + 0.0j)
        missing = np.flatnonzero(~avail)
        if len(missing):
            miss_idx = idx[missing]
            todo = ~self._cache_done[miss_idx]
            if todo.any():
                fresh = np.unique(miss_idx[todo])
                vals, ok = self._interp.interpolate(fresh)
                self._cache_vals[fresh] = vals
                self._cache_ok[fresh] = ok
                self._cache_done[fresh] = True
            if not self._cache_ok[miss_idx].all():
                self._charge(int(idx.size), t0)
                raise InterpolationImpossible(
                    "missing sample with fewer than 3 neighbors in window"
                )
            out[missing] = self._cache_vals[miss_idx]
        self._charge(int(idx.size), t0)
        return out.reshape(shape)
