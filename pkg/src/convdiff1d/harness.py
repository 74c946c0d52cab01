"""Refinement studies: run method x N ladders and write the results.

Each ladder is preceded by a hidden warm-up run at ``N/2`` so that the first
reported row has an order; warm-up rows never reach the output.  Rows come
out ordered by method (fd, mim, fem) and then by ascending ``N``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np

from .analysis import METHODS, l2_error, max_norm_error, oscillation_count, peclet
from .banded import SingularMatrixError
from .estimators import make_solver, solver_params
from .problem import canonical_name, preset
from .quadrature import gauss_rule
from .validation import check_ladder, check_method

logger = logging.getLogger(__name__)

NORMS = ("max", "l2")
FORMATS = ("csv", "json")


@dataclass
class ExperimentConfig:
    problem: str
    methods: tuple = METHODS
    n_ladder: tuple = (1000, 3000, 5000)
    quad_order: int = 3
    norms: tuple = NORMS
    fmt: str = "csv"
    out: Optional[str] = None
    dump_solutions: bool = False
    cond: bool = False
    l2_quad_order: int = 5
    fd_reconstruction: str = "pc_dual"
    mim_diffusion: str = "flux"
    mim_convection: str = "right"
    n_jobs: int = 1

    def __post_init__(self):
        self.problem = canonical_name(self.problem)
        methods = [check_method(m) for m in self.methods]
        if not methods:
            raise ValueError("at least one method is required")
        self.methods = tuple(m for m in METHODS if m in methods)
        self.n_ladder = tuple(check_ladder(self.n_ladder))
        norms = tuple(n.strip().lower() for n in self.norms)
        bad = [n for n in norms if n not in NORMS]
        if bad or not norms:
            raise ValueError(f"unknown norms {bad}; expected a subset of {NORMS}")
        self.norms = norms
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown output format {self.fmt!r}; expected one of {FORMATS}")


@dataclass
class ConvergenceRow:
    problem: str
    method: str
    n: int
    h: float
    err_max: Optional[float] = None
    err_l2: Optional[float] = None
    order_max: Optional[float] = None
    order_l2: Optional[float] = None
    peclet: Optional[float] = None
    oscillations: Optional[int] = None
    cond_estimate: Optional[float] = None
    error: Optional[str] = None
    warmup: bool = field(default=False, repr=False)


OUTPUT_FIELDS = [f.name for f in fields(ConvergenceRow) if f.name != "warmup"]


def _ladder_with_warmup(ns):
    first = ns[0] // 2
    return ([first] if first >= 2 else []) + list(ns)


def _run_cell(cfg: ExperimentConfig, problem, method, n, warmup):
    row = ConvergenceRow(cfg.problem, method, n, (problem.b - problem.a) / n, warmup=warmup)
    params = solver_params(
        method,
        quad_order=cfg.quad_order,
        fd_reconstruction=cfg.fd_reconstruction,
        diffusion=cfg.mim_diffusion,
        convection=cfg.mim_convection,
    )
    try:
        est = make_solver(method, n, **params).fit(problem)
    except (SingularMatrixError, FloatingPointError) as exc:
        row.error = str(exc)
        logger.warning("%s %s N=%d failed: %s", cfg.problem, method, n, exc)
        return row, None
    s = est.solution_
    if problem.exact is not None:
        if "max" in cfg.norms:
            row.err_max = max_norm_error(s, problem.exact)
        if "l2" in cfg.norms:
            row.err_l2 = l2_error(s, problem.exact, gauss_rule(cfg.l2_quad_order))
    row.peclet = peclet(problem, n)
    row.oscillations = oscillation_count(s)
    if cfg.cond and not warmup:
        row.cond_estimate = est.condition_estimate()
    return row, s


def _fill_orders(rows):
    for attr, target in (("err_max", "order_max"), ("err_l2", "order_l2")):
        for prev, cur in zip(rows, rows[1:]):
            e0, e1 = getattr(prev, attr), getattr(cur, attr)
            if e0 is None or e1 is None or not (e0 > 0 and e1 > 0):
                continue
            setattr(cur, target, math.log(e0 / e1) / math.log(cur.n / prev.n))


def run_experiment(cfg: ExperimentConfig, include_warmup: bool = False) -> list:
    """Solve every (method, N) cell of ``cfg`` and return its rows."""
    problem = preset(cfg.problem)
    full = _ladder_with_warmup(cfg.n_ladder)
    cells = [(m, n, n not in cfg.n_ladder) for m in cfg.methods for n in full]

    def work(cell):
        return _run_cell(cfg, problem, *cell)

    if cfg.n_jobs > 1:
        with ThreadPoolExecutor(cfg.n_jobs) as pool:
            results = list(pool.map(work, cells))
    else:
        results = [work(c) for c in cells]

    rows = []
    for method in cfg.methods:
        ladder = [r for r, _ in results if r.method == method]
        _fill_orders(ladder)
        rows.extend(ladder)

    if cfg.dump_solutions and cfg.out:
        stem = Path(cfg.out)
        for (row, s) in results:
            if s is not None and not row.warmup:
                path = stem.with_name(f"{stem.stem}_{row.method}_{row.n}.csv")
                _write_text(path, solution_csv(s, problem))

    if not include_warmup:
        rows = [r for r in rows if not r.warmup]
    return rows


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def _csv_text(header, records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for rec in records:
        writer.writerow([_fmt(v) for v in rec])
    return buf.getvalue()


def rows_to_csv(rows) -> str:
    return _csv_text(OUTPUT_FIELDS, ([getattr(r, f) for f in OUTPUT_FIELDS] for r in rows))


def rows_to_json(rows) -> str:
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        return v

    records = []
    for r in rows:
        d = asdict(r)
        records.append({f: clean(d[f]) for f in OUTPUT_FIELDS})
    return json.dumps(records, indent=2) + "\n"


def _write_text(path, text):
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_rows(rows, fmt: str = "csv", out=None) -> str:
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    if out:
        _write_text(out, text)
    return text


# ---------------------------------------------------------------------------
# reference order tables and solution profiles
# ---------------------------------------------------------------------------

TABLES = {
    1: ("ex1", (1000, 3000, 5000, 7000, 9000, 11000)),
    2: ("ex2", (1000, 3000, 5000, 7000, 9000, 11000)),
    3: ("ex3_dirichlet", (1000, 2000, 4000, 5000)),
}
TABLE_LABELS = {"fd": "DF", "mim": "MIM", "fem": "MEF"}


def table_rows(table_id: int, **overrides) -> list:
    if table_id not in TABLES:
        raise ValueError(f"unknown table {table_id!r}; expected 1, 2 or 3")
    name, ladder = TABLES[table_id]
    return run_experiment(ExperimentConfig(problem=name, n_ladder=ladder, **overrides))


def format_table(rows) -> str:
    """One line per N with max-norm then L2 orders for DF, MIM, MEF."""
    ns = sorted({r.n for r in rows})
    by_key = {(r.method, r.n): r for r in rows}
    header = ["N"] + [f"{TABLE_LABELS[m]}_max" for m in METHODS] + [
        f"{TABLE_LABELS[m]}_L2" for m in METHODS
    ]
    records = []
    for n in ns:
        rec = [n]
        for attr in ("order_max", "order_l2"):
            rec += [getattr(by_key[(m, n)], attr) if (m, n) in by_key else None for m in METHODS]
        records.append(rec)
    return _csv_text(header, records)


def reproduce_table(table_id: int, out=None) -> str:
    text = format_table(table_rows(table_id))
    if out:
        _write_text(out, text)
    return text


def solution_csv(s, problem) -> str:
    exact = problem.exact.u(s.locations) if problem.exact is not None else [None] * len(s.values)
    return _csv_text(["x", "value", "exact"], zip(s.locations, s.values, exact))


def dump_solution(problem, method: str, n: int, path=None, **params) -> str:
    """Solution profile as CSV (``x, value, exact``) at the method's sample points."""
    p = preset(problem) if isinstance(problem, str) else problem
    s = make_solver(method, n, **params).fit(p).solution_
    text = solution_csv(s, p)
    if path:
        _write_text(path, text)
    return text
