"""Measure how recovery time scales with the signal length.

The whole point of the algorithm: once sampling is factored out, the work
grows polylogarithmically in n, so doubling the signal repeatedly barely
moves the clock.  This reproduces the scaling experiment at desk scale via
the benchmark harness (the CLI equivalent is `sparsefourier bench --table
T1-scaling`).

Run:  python3 demos/scaling_study.py
"""

from sparsefourier.bench import ExperimentSpec, rows_to_csv, run_table

spec = ExperimentSpec(table_id="T1-scaling",
                      ns=(2 ** 10, 2 ** 12, 2 ** 14, 2 ** 16),
                      runs_per_cell=3, seed=0)
header, rows = run_table(spec)
print(rows_to_csv(header, rows))

t0, t1 = rows[0][2], rows[-1][2]
print(f"time without sampling grew x{t1 / t0:.2f} "
      f"while n grew x{rows[-1][0] // rows[0][0]}")
