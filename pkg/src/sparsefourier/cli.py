"""Command-line interface: generate, recover, bench, verify-lemmas.

The default seed comes from the SPARSEFOURIER_SEED environment variable
(falling back to 0) so batch scripts can steer reproducibility without
touching every invocation.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .bench import (ExperimentSpec, TABLE_IDS, relative_error, rows_to_csv,
                    run_table, verify_lemmas)
from .pursuit import PursuitConfig, recover
from .signal import (ModeSpec, Representation, SampledSignal, bernoulli_mask,
                     read_representation, read_samples, synthesize,
                     write_representation, write_samples)

__all__ = ["main", "parse_modes", "default_seed"]

SEED_ENV_VAR = "SPARSEFOURIER_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR, "0")
    try:
        return int(raw)
    except ValueError as e:
        raise SystemExit(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from e


def parse_modes(text: str) -> list[ModeSpec]:
    """Parse 'freq:amplitude' pairs like '5:1+0i,9:2-0.5i'."""
    modes = []
    for part in text.split(","):
        try:
            freq_s, amp_s = part.split(":")
            modes.append(ModeSpec(int(freq_s), complex(amp_s.replace("i", "j"))))
        except ValueError as e:
            raise SystemExit(f"bad mode spec {part!r} "
                             "(expected freq:amplitude, e.g. 5:1+0i)") from e
    return modes


def _sidecar_path(out: str) -> Path:
    return Path(str(out) + ".modes")


def cmd_generate(args) -> int:
    modes = parse_modes(args.modes)
    rng = np.random.default_rng(args.seed)
    full = synthesize(modes, args.n, noise_sigma=args.sigma,
                      rng=rng if args.sigma else None)
    mask = bernoulli_mask(args.n, args.p, rng)
    write_samples(args.out, SampledSignal.from_full(full, mask))
    truth = Representation(args.n,
                           np.array([m.frequency for m in modes], np.int64),
                           np.array([m.amplitude for m in modes], complex))
    write_representation(_sidecar_path(args.out), truth)
    print(f"wrote {args.out} ({mask.available_count}/{args.n} samples) "
          f"and {_sidecar_path(args.out)}")
    return 0


def cmd_recover(args) -> int:
    try:
        data = read_samples(args.infile)
    except (OSError, ValueError) as e:
        raise SystemExit(f"cannot read {args.infile}: {e}")
    cfg = PursuitConfig(b=args.b, epsilon=args.epsilon, delta=args.delta,
                        iter_budget=args.iter_cap, mode=args.mode,
                        stop_threshold=args.stop_threshold)
    report = recover(data, cfg, np.random.default_rng(args.seed))
    write_representation(args.out, report.representation)
    line = (f"iterations={report.iterations_used} "
            f"samples_touched={report.samples_touched} "
            f"time_total={report.time_total:.4f} "
            f"time_wo_sampling={report.time_wo_sampling:.4f}")
    sidecar = _sidecar_path(args.infile)
    if sidecar.exists():
        truth = read_representation(sidecar)
        if truth.n != data.n:
            raise SystemExit(f"sidecar length {truth.n} != signal length {data.n}")
        modes = [ModeSpec(int(w), c) for w, c in zip(truth.freqs, truth.coefs)]
        found = set(int(w) for w in report.representation.freqs)
        success = found == {m.frequency for m in modes}
        err = relative_error(report.representation, modes)
        line += f" success={success} relative_error={err:.6g}"
    print(line)
    return 0


def cmd_bench(args) -> int:
    def floats(text):
        return tuple(float(x) for x in text.split(",")) if text else ()

    def ints(text):
        return tuple(int(x) for x in text.split(",")) if text else ()

    spec = ExperimentSpec(table_id=args.table, ns=ints(args.n), bs=ints(args.b),
                          ps=floats(args.p), sigmas=floats(args.sigma),
                          runs_per_cell=args.runs_per_cell, seed=args.seed,
                          iter_cap=args.iter_cap)
    header, rows = run_table(spec)
    csv = rows_to_csv(header, rows)
    if args.out:
        Path(args.out).write_text(csv)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(csv)
    return 0


def cmd_verify_lemmas(args) -> int:
    results = verify_lemmas(args.seed)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: empirical={r.empirical:.6g} "
              f"bound={r.bound:.6g} ({r.detail})")
        failed += not r.passed
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sparsefourier",
        description="Sparse Fourier recovery from incomplete samples")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="synthesize a masked test signal")
    g.add_argument("--n", type=int, required=True, help="signal length (power of 2)")
    g.add_argument("--modes", required=True,
                   help="comma-separated freq:amplitude pairs, e.g. 5:1+0i,9:2+0i")
    g.add_argument("--p", type=float, default=1.0, help="availability ratio")
    g.add_argument("--sigma", type=float, default=0.0, help="noise level")
    g.add_argument("--seed", type=int, default=default_seed())
    g.add_argument("--out", required=True, help="sample file path")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("recover", help="recover a B-term representation")
    r.add_argument("infile", help="sample file")
    r.add_argument("--b", type=int, required=True, help="number of modes")
    r.add_argument("--epsilon", type=float, default=0.1)
    r.add_argument("--delta", type=float, default=0.05)
    r.add_argument("--mode", choices=("greedy", "interpolated"),
                   default="greedy")
    r.add_argument("--iter-cap", type=int, default=200)
    r.add_argument("--stop-threshold", type=float, default=None,
                   help="absolute residual-energy stop (default: epsilon-relative)")
    r.add_argument("--seed", type=int, default=default_seed())
    r.add_argument("--out", required=True, help="representation file path")
    r.set_defaults(func=cmd_recover)

    b = sub.add_parser("bench", help="run one experiment table, emit CSV")
    b.add_argument("--table", choices=TABLE_IDS, required=True)
    b.add_argument("--n", default="", help="comma-separated signal lengths")
    b.add_argument("--b", default="", help="comma-separated mode counts")
    b.add_argument("--p", default="", help="comma-separated availability ratios")
    b.add_argument("--sigma", default="", help="comma-separated noise levels")
    b.add_argument("--runs-per-cell", type=int, default=10)
    b.add_argument("--iter-cap", type=int, default=200)
    b.add_argument("--seed", type=int, default=default_seed())
    b.add_argument("--out", default="", help="CSV path (default: stdout)")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify-lemmas",
                       help="Monte-Carlo checks of the probabilistic bounds")
    v.add_argument("--seed", type=int, default=default_seed())
    v.set_defaults(func=cmd_verify_lemmas)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
