"""Recovery when 99% of the samples are missing.

The greedy mode needs whole convolution supports to be available and
collapses below roughly p = 0.4; the interpolated mode fills gaps in the raw
signal with quadratic Lagrange interpolation and keeps working down to a few
hundred available samples in total — provided the underlying tones are slow
enough for local interpolation to track them.

Run:  python3 demos/sparse_availability.py
"""

import numpy as np

from sparsefourier import (ModeSpec, PursuitConfig, SampledSignal,
                           bernoulli_mask, recover, synthesize)

n = 2 ** 16
modes = [ModeSpec(23, 1.0), ModeSpec(71, 1.0 - 0.5j)]  # low band on purpose

for p in (0.4, 0.1, 0.01):
    rng = np.random.default_rng(7)
    full = synthesize(modes, n)
    data = SampledSignal.from_full(full, bernoulli_mask(n, p, rng))
    print(f"\np = {p}: {data.mask.available_count} of {n} samples")
    for mode in ("greedy", "interpolated"):
        if mode == "greedy" and p < 0.4:
            # a 9-sample support is fully available w.p. p^9; hopeless here
            print("  greedy        skipped (supports unavailable)")
            continue
        cfg = PursuitConfig(b=2, mode=mode, iter_budget=200)
        report = recover(data, cfg, np.random.default_rng(7))
        found = sorted(int(w) for w in report.representation.freqs)
        ok = found == [23, 71]
        print(f"  {mode:13s} found {found} "
              f"{'OK' if ok else 'WRONG'} in {report.iterations_used} iters, "
              f"{report.time_total:.1f}s")
