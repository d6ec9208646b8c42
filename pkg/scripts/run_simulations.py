"""Replicate study for setups a, b and c; one CSV directory per setup."""

import argparse
from pathlib import Path

from l1paths.dantzig import DantzigConfig
from l1paths.datagen import SimSetup
from l1paths.experiments import DEFAULT_SEED, run_setup, write_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--setups", default="abc")
    ap.add_argument("--reps", type=int, default=50)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--grid", type=int, default=200)
    ap.add_argument("--out", default="results/simulations")
    args = ap.parse_args()

    for label in args.setups:
        setup = SimSetup.from_label(label, reps=args.reps)
        report = run_setup(setup, args.reps, args.seed, DantzigConfig(grid_size=args.grid),
                           progress=lambda i, _: print(f"  {label}: replicate {i + 1}/{args.reps}",
                                                       end="\r", flush=True))
        dest = Path(args.out) / label
        write_report(report, dest)
        print(f"setup {label}: {report.timing['seconds']:.1f} s -> {dest}")
        for m, s in report.summary.items():
            print(f"  {m:8s} lambda_cv={s['lambda_cv']:.4f} lambda_dd={s['lambda_dd']:.4f} "
                  f"mse_fit cv/dd={s['mse_fit_cv']:.4f}/{s['mse_fit_dd']:.4f} "
                  f"selected cv/dd={s['selected_cv']:.1f}/{s['selected_dd']:.1f}")
        best = report.mse_beta.min(axis=0)
        print("  min mean mse_beta: " + ", ".join(
            f"{m}={v:.4f}" for m, v in zip(("lasso", "dantzig", "boost"), best)))


if __name__ == "__main__":
    main()
