"""Command line entry point.

    convdiff1d solve --problem ex1 --method mim --n 20 --out ex1_mim.csv
    convdiff1d convergence --problem ex2 --methods fd,mim,fem --n 1000,3000,5000 --out conv.csv
    convdiff1d table --id 3 --out table3.csv
"""

from __future__ import annotations

import argparse
import sys

from .analysis import l2_error, max_norm_error
from .estimators import make_solver, solver_params
from .harness import ExperimentConfig, reproduce_table, run_experiment, solution_csv, write_rows
from .problem import canonical_name, preset


def _csv_list(text, cast=str):
    return [cast(t) for t in text.split(",") if t.strip()]


def _problem(text):
    try:
        return canonical_name(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convdiff1d",
        description="Mimetic, finite-difference and finite-element solvers for "
        "steady 1-D convection-diffusion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one problem and write the solution profile")
    s.add_argument("--problem", required=True, type=_problem)
    s.add_argument("--method", required=True, choices=["fd", "mim", "fem"])
    s.add_argument("--n", required=True, type=int)
    s.add_argument("--quad", type=int, choices=[2, 3, 5], default=3)
    s.add_argument("--out")

    c = sub.add_parser("convergence", help="run a refinement ladder")
    c.add_argument("--problem", required=True, type=_problem)
    c.add_argument("--methods", default="fd,mim,fem", type=_csv_list)
    c.add_argument("--n", required=True, type=lambda t: _csv_list(t, int))
    c.add_argument("--norms", default="max,l2", type=_csv_list)
    c.add_argument("--quad", type=int, choices=[2, 3, 5], default=3)
    c.add_argument("--cond", action="store_true", help="report a 1-norm condition estimate")
    c.add_argument("--dump-solutions", action="store_true")
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--out")

    t = sub.add_parser("table", help="reproduce one of the reference order tables")
    t.add_argument("--id", required=True, type=int, choices=[1, 2, 3])
    t.add_argument("--out")
    return parser


def _emit(text, out):
    if not out:
        sys.stdout.write(text)


def _solve(args):
    p = preset(args.problem)
    params = solver_params(args.method, quad_order=args.quad)
    s = make_solver(args.method, args.n, **params).fit(p).solution_
    text = solution_csv(s, p)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    _emit(text, args.out)
    if p.exact is not None:
        print(
            f"{args.problem} {args.method} N={args.n}: "
            f"err_max={max_norm_error(s, p.exact):.6e} err_l2={l2_error(s, p.exact):.6e}",
            file=sys.stderr,
        )


def _convergence(args):
    cfg = ExperimentConfig(
        problem=args.problem,
        methods=tuple(args.methods),
        n_ladder=tuple(args.n),
        quad_order=args.quad,
        norms=tuple(args.norms),
        fmt=args.format,
        out=args.out,
        dump_solutions=args.dump_solutions,
        cond=args.cond,
    )
    rows = run_experiment(cfg)
    _emit(write_rows(rows, cfg.fmt, cfg.out), cfg.out)


def _table(args):
    _emit(reproduce_table(args.id, args.out), args.out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"solve": _solve, "convergence": _convergence, "table": _table}
    try:
        handlers[args.command](args)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"convdiff1d: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
