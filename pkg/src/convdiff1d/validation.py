"""Argument checks shared by the solvers, estimators and harness."""

from __future__ import annotations

from .analysis import METHODS
from .problem import ProblemInstance, validate


class InvalidProblemError(ValueError):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


def check_problem(p, check_exact: bool = False) -> ProblemInstance:
    """Raise :class:`InvalidProblemError` unless ``p`` passes validation.

    The exact-solution residual check is skipped unless ``check_exact``;
    solvers accept problems whose closed form is only approximate.
    """
    if not isinstance(p, ProblemInstance):
        raise TypeError(f"expected a ProblemInstance, got {type(p).__name__}")
    report = validate(p)
    if not check_exact:
        report.issues = [i for i in report.issues if i.check != "residual"]
    if not report.ok:
        raise InvalidProblemError(report)
    return p


def check_n_cells(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise ValueError(f"n_cells must be an integer >= 2, got {n!r}")
    return int(n)


def check_method(method: str) -> str:
    m = str(method).strip().lower()
    aliases = {"df": "fd", "mef": "fem", "mimetic": "mim"}
    m = aliases.get(m, m)
    if m not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    return m


def check_ladder(ns) -> list:
    ns = [check_n_cells(n) for n in ns]
    if not ns:
        raise ValueError("the N ladder is empty")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError(f"the N ladder must be strictly increasing, got {ns}")
    return ns
