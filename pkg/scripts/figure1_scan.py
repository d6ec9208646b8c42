"""Third-coefficient scan of Lasso and Dantzig over the correlation r."""

import argparse

import numpy as np

from l1paths.experiments import figure1_scan, write_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rmin", type=float, default=0.35)
    ap.add_argument("--rmax", type=float, default=0.70)
    ap.add_argument("--rsteps", type=int, default=36)
    ap.add_argument("--grid", type=int, default=200)
    ap.add_argument("--out", default="results/figure1.csv")
    args = ap.parse_args()

    r_values = np.linspace(args.rmin, args.rmax, args.rsteps)
    rows = figure1_scan(r_values, grid_size=args.grid)
    write_scan(rows, args.out)
    for r in r_values:
        sel = [row for row in rows if row.r == r]
        bl = max(abs(row.beta3_lasso) for row in sel)
        bd = max(abs(row.beta3_dantzig) for row in sel)
        deg = sum(row.dantzig_degenerate for row in sel)
        print(f"r={r:.3f}  max|b3| lasso={bl:.4f} dantzig={bd:.4f}  degenerate points={deg}")


if __name__ == "__main__":
    main()
