"""Command-line entry point: ``l1paths <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 numerical/solver failure.
"""

import argparse
import csv
import sys

import numpy as np

from .boosting import BoostConfig, boost_path
from .dantzig import DantzigConfig, DantzigFailure, dantzig_grid_path
from .datagen import SimSetup, fmt, load_problem
from .evaluation import dd_selector
from .experiments import (DEFAULT_SEED, THEOREM1_TOL, DominanceNotFound, ReplicateFailure,
                          figure1_scan, run_setup, theorem1_suite, write_report, write_scan)
from .lasso import RankDeficientActiveSet, lars_lasso_path
from .lp import IterationLimit
from .numerics import NotPositiveDefinite
from .paths import write_path_csv

EXIT_OK, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def build_parser():
    ap = _Parser(prog="l1paths", description="Lasso, Dantzig and L2Boosting paths.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(sp):
        sp.add_argument("--design", required=True, help="n x p design CSV")
        sp.add_argument("--response", required=True, help="n x 1 response CSV")
        sp.add_argument("--no-header", action="store_true", help="CSV inputs have no header row")
        sp.add_argument("--no-normalize", action="store_true",
                        help="use design columns as given instead of scaling to unit norm")

    sp = sub.add_parser("path", help="compute one regularization path")
    sp.add_argument("--method", required=True, choices=("lasso", "dantzig", "boost"))
    data_args(sp)
    sp.add_argument("--grid", type=_positive_int, default=200,
                    help="Dantzig grid size (Lasso writes its exact knots, boosting its records)")
    sp.add_argument("--out", help="output CSV (default: stdout)")

    sp = sub.add_parser("simulate", help="replicate study for one setup")
    sp.add_argument("--setup", required=True, choices=("a", "b", "c"))
    sp.add_argument("--reps", type=_positive_int, default=50)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--grid", type=_positive_int, default=200)
    sp.add_argument("--out", required=True, help="output directory")

    sp = sub.add_parser("figure1", help="third-coefficient scan over the correlation r")
    sp.add_argument("--rmin", type=float, default=0.35)
    sp.add_argument("--rmax", type=float, default=0.70)
    sp.add_argument("--rsteps", type=_positive_int, default=36)
    sp.add_argument("--grid", type=_positive_int, default=200)
    sp.add_argument("--out", required=True, help="output CSV")

    sp = sub.add_parser("check-theorem1", help="Lasso/Dantzig path equality on dominant designs")
    sp.add_argument("--n", type=_positive_int, default=50)
    sp.add_argument("--p", type=_positive_int, default=10)
    sp.add_argument("--trials", type=_nonneg_int, default=100)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sp = sub.add_parser("dd-select", help="data-driven Dantzig selector")
    data_args(sp)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="fold assignment seed")
    sp.add_argument("--folds", type=_positive_int, default=5)
    sp.add_argument("--out", help="write selected coefficients to this CSV")
    return ap


def _load(args):
    return load_problem(args.design, args.response, header=not args.no_header,
                        normalize=not args.no_normalize)


def _cmd_path(args):
    prob = _load(args)
    if args.method == "lasso":
        path = lars_lasso_path(prob)
    elif args.method == "dantzig":
        if args.grid < 2:
            raise UsageError("--grid must be at least 2 for the Dantzig path")
        path = dantzig_grid_path(prob, DantzigConfig(grid_size=args.grid))
    else:
        path = boost_path(prob, BoostConfig())
    write_path_csv(path, args.out if args.out else sys.stdout)


def _cmd_simulate(args):
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    setup = SimSetup.from_label(args.setup, reps=args.reps)
    report = run_setup(setup, args.reps, args.seed, DantzigConfig(grid_size=args.grid))
    write_report(report, args.out)
    print(f"setup {args.setup}: {args.reps} replicates written to {args.out} "
          f"({report.timing['seconds']:.1f} s)")


def _cmd_figure1(args):
    if not args.rmin <= args.rmax:
        raise UsageError("--rmin must not exceed --rmax")
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    rows = figure1_scan(np.linspace(args.rmin, args.rmax, args.rsteps), grid_size=args.grid)
    write_scan(rows, args.out)


def _cmd_theorem1(args):
    if args.p > args.n:
        raise UsageError("--p must not exceed --n")
    s = theorem1_suite(args.n, args.p, args.trials, args.seed)
    print(f"trials_run,{s.trials_run}")
    print(f"dominance_hits,{s.dominance_hits}")
    print(f"max_path_discrepancy,{fmt(s.max_path_discrepancy)}")
    if s.max_path_discrepancy > THEOREM1_TOL:
        print(f"discrepancy exceeds {THEOREM1_TOL:g}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _cmd_dd_select(args):
    prob = _load(args)
    if not 2 <= args.folds <= prob.n:
        raise UsageError(f"--folds must be between 2 and n={prob.n}")
    sel = dd_selector(prob, seed=args.seed, folds=args.folds)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["key", "value"])
    w.writerow(["lambda_dd", fmt(sel.lambda_dd)])
    w.writerow(["sigma_hat_cv", fmt(sel.sigma_hat_cv)])
    w.writerow(["selected", " ".join(str(j + 1) for j in np.flatnonzero(np.abs(sel.beta) > 1e-8))])
    if args.out:
        with open(args.out, "w", newline="") as fh:
            cw = csv.writer(fh, lineterminator="\n")
            cw.writerow(["j", "beta"])
            cw.writerows([[j + 1, fmt(b)] for j, b in enumerate(sel.beta)])


_COMMANDS = {"path": _cmd_path, "simulate": _cmd_simulate, "figure1": _cmd_figure1,
             "check-theorem1": _cmd_theorem1, "dd-select": _cmd_dd_select}

_SOLVER_ERRORS = (DantzigFailure, ReplicateFailure, RankDeficientActiveSet, IterationLimit,
                  DominanceNotFound, FloatingPointError, np.linalg.LinAlgError)


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        rc = _COMMANDS[args.command](args)
        return EXIT_OK if rc is None else rc
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except _SOLVER_ERRORS as exc:
        where = ""
        if getattr(exc, "lam", None) is not None:
            where = f" (lambda={exc.lam!r})"
        print(f"l1paths: solver failure{where}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except NotPositiveDefinite as exc:
        print(f"l1paths: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"l1paths: {exc}", file=sys.stderr)
        return EXIT_USAGE
