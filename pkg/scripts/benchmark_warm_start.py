"""Dantzig grid sweep with and without basis reuse across lambda."""

import argparse

from l1paths.dantzig import DantzigConfig
from l1paths.datagen import SimSetup, sample_problem
from l1paths.experiments import DEFAULT_SEED, benchmark_warm_start


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--setup", default="b")
    ap.add_argument("--problems", type=int, default=5)
    ap.add_argument("--grid", type=int, default=200)
    args = ap.parse_args()

    setup = SimSetup.from_label(args.setup)
    for i in range(args.problems):
        out = benchmark_warm_start(sample_problem(setup, DEFAULT_SEED + i),
                                   DantzigConfig(grid_size=args.grid))
        print(f"problem {i}: warm {out['warm_seconds']:.3f} s ({out['warm_pivots']} pivots), "
              f"cold {out['cold_seconds']:.3f} s ({out['cold_pivots']} pivots), "
              f"speedup {out['speedup']:.1f}x, max l1 gap {out['max_l1_objective_gap']:.1e}")


if __name__ == "__main__":
    main()
