"""Steady 1-D convection-diffusion boundary-value problems.

The model problem is

    k(x) u''(x) + nu(x) u'(x) = f(x)    on (a, b)

closed by one Robin relation ``alpha * u + beta * du/dx = gamma`` at each
endpoint (``d/dx`` at both ends, no outward normal).  ``beta == 0`` gives a
Dirichlet condition, ``alpha == 0`` a Neumann one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

ScalarFunction = Callable[[np.ndarray], np.ndarray]

PRESET_NAMES = ("ex1", "ex2", "ex3_dirichlet", "ex3_robin")


def constant(value: float) -> ScalarFunction:
    """Vectorized constant function that preserves the input shape."""

    def fn(x):
        return np.full_like(np.asarray(x, dtype=float), value)

    return fn


@dataclass(frozen=True)
class CoefficientSet:
    k: ScalarFunction
    k_prime: ScalarFunction
    nu: ScalarFunction
    f: ScalarFunction
    k_constant: bool = False


@dataclass(frozen=True)
class RobinSpec:
    alpha: float
    beta: float
    gamma: float

    @property
    def is_dirichlet(self) -> bool:
        return self.beta == 0.0

    @property
    def is_degenerate(self) -> bool:
        return self.alpha == 0.0 and self.beta == 0.0

    @property
    def dirichlet_value(self) -> float:
        return self.gamma / self.alpha


@dataclass(frozen=True)
class ExactSolution:
    u: ScalarFunction
    u_prime: ScalarFunction


@dataclass(frozen=True)
class ProblemInstance:
    """Immutable description of one boundary-value problem.

    Parameters
    ----------
    domain : tuple of float
        Interval ``(a, b)`` with ``a < b``.
    coefficients : CoefficientSet
        ``k``, ``k'``, ``nu`` and ``f`` as vectorized callables.
    left, right : RobinSpec
        Boundary relations at ``a`` and ``b``.
    exact : ExactSolution or None
        Closed-form solution, when known.
    name : str
        Identifier used in reports.
    """

    domain: tuple
    coefficients: CoefficientSet
    left: RobinSpec
    right: RobinSpec
    exact: Optional[ExactSolution] = None
    name: str = "custom"

    @property
    def a(self) -> float:
        return float(self.domain[0])

    @property
    def b(self) -> float:
        return float(self.domain[1])


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def _ex1() -> ProblemInstance:
    e20 = np.exp(20.0)
    denom = e20 - 1.0
    alpha = -20.0 * e20 / denom

    def u(x):
        return np.expm1(20.0 * np.asarray(x, dtype=float)) / denom

    def u_prime(x):
        return 20.0 * np.exp(20.0 * np.asarray(x, dtype=float)) / denom

    def f(x):
        return 400.0 * np.exp(20.0 * np.asarray(x, dtype=float)) / denom

    coeffs = CoefficientSet(
        k=constant(1.0), k_prime=constant(0.0), nu=constant(0.0), f=f, k_constant=True
    )
    return ProblemInstance(
        domain=(0.0, 1.0),
        coefficients=coeffs,
        # alpha*u(0) - u'(0) = -20/(e^20 - 1)
        left=RobinSpec(alpha, -1.0, -20.0 / denom),
        right=RobinSpec(alpha, 1.0, 0.0),
        exact=ExactSolution(u, u_prime),
        name="ex1",
    )


def _ex2(steepness: float = 250.0, x0: float = 0.75) -> ProblemInstance:
    ap = steepness

    def k(x):
        x = np.asarray(x, dtype=float)
        return 1.0 / ap + ap * (x - x0) ** 2

    def k_prime(x):
        return 2.0 * ap * (np.asarray(x, dtype=float) - x0)

    def front(x):
        # arctan(p) + arctan(q) == atan2(p + q, 1 - p*q) on this branch; p + q = ap*x
        # is exact, which avoids cancellation near x = 0
        return np.arctan2(ap * x, 1.0 - ap * ap * x0 * (x - x0))

    def u(x):
        x = np.asarray(x, dtype=float)
        return (1.0 - x) * front(x)

    def u_prime(x):
        x = np.asarray(x, dtype=float)
        return -front(x) + (1.0 - x) * ap / (1.0 + (ap * (x - x0)) ** 2)

    def f(x):
        # k*u'' + k'*u' = (k*u')' and k * d/dx front = 1
        x = np.asarray(x, dtype=float)
        return -2.0 * ap * (x - x0) * front(x) - 2.0

    coeffs = CoefficientSet(k=k, k_prime=k_prime, nu=k_prime, f=f)
    return ProblemInstance(
        domain=(0.0, 1.0),
        coefficients=coeffs,
        left=RobinSpec(1.0, 1.0, ap / (1.0 + ap**2 * x0**2)),
        right=RobinSpec(1.0, 1.0, -np.arctan(ap * (1.0 - x0)) - np.arctan(ap * x0)),
        exact=ExactSolution(u, u_prime),
        name="ex2",
    )


EX3_DIFFUSION = 1.052
EX3_VELOCITY = -110.5


def _ex3(robin: bool) -> ProblemInstance:
    kk, vv = EX3_DIFFUSION, EX3_VELOCITY
    lam = vv / kk
    # 1 - exp(-lam), written with expm1 for accuracy
    denom = -np.expm1(-lam)

    def u(x):
        return -np.expm1(-lam * np.asarray(x, dtype=float)) / denom

    def u_prime(x):
        return lam * np.exp(-lam * np.asarray(x, dtype=float)) / denom

    coeffs = CoefficientSet(
        k=constant(kk), k_prime=constant(0.0), nu=constant(vv), f=constant(0.0), k_constant=True
    )
    if robin:
        left = RobinSpec(0.0, 1.0, lam / denom)
        right = RobinSpec(1.0, 1.0, 1.0 + lam * np.exp(-lam) / denom)
        name = "ex3_robin"
    else:
        left = RobinSpec(1.0, 0.0, 0.0)
        right = RobinSpec(1.0, 0.0, 1.0)
        name = "ex3_dirichlet"
    return ProblemInstance(
        domain=(0.0, 1.0),
        coefficients=coeffs,
        left=left,
        right=right,
        exact=ExactSolution(u, u_prime),
        name=name,
    )


def canonical_name(name: str) -> str:
    """Map CLI spellings (``ex3-robin``) onto preset identifiers."""
    key = name.strip().lower().replace("-", "_")
    if key not in PRESET_NAMES:
        raise ValueError(
            f"unknown problem {name!r}; expected one of "
            + ", ".join(n.replace("_", "-") for n in PRESET_NAMES)
        )
    return key


def preset(name: str) -> ProblemInstance:
    """Build one of the four reference problems by name."""
    key = canonical_name(name)
    if key == "ex1":
        return _ex1()
    if key == "ex2":
        return _ex2()
    return _ex3(robin=(key == "ex3_robin"))


def ex3_lambda() -> float:
    return EX3_VELOCITY / EX3_DIFFUSION


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Issue:
    check: str
    location: str
    message: str


@dataclass
class ValidationReport:
    problem: str
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, check, location, message):
        self.issues.append(Issue(check, location, message))

    def __str__(self):
        if self.ok:
            return f"{self.problem}: pass"
        lines = [f"{self.problem}: {len(self.issues)} issue(s)"]
        lines += [f"  [{i.check}] at {i.location}: {i.message}" for i in self.issues]
        return "\n".join(lines)


def pde_residual(problem: ProblemInstance, x, step: float = 1e-5) -> np.ndarray:
    """``k u'' + nu u' - f`` for the exact solution, ``u''`` by centered differences."""
    if problem.exact is None:
        raise ValueError(f"problem {problem.name!r} has no exact solution")
    x = np.asarray(x, dtype=float)
    u = problem.exact.u
    c = problem.coefficients
    u2 = (u(x + step) - 2.0 * u(x) + u(x - step)) / step**2
    return c.k(x) * u2 + c.nu(x) * problem.exact.u_prime(x) - c.f(x)


def _residual_scale(problem, x, step=1e-5):
    u = problem.exact.u
    c = problem.coefficients
    u2 = (u(x + step) - 2.0 * u(x) + u(x - step)) / step**2
    terms = (np.abs(c.f(x)), np.abs(c.k(x) * u2), np.abs(c.nu(x) * problem.exact.u_prime(x)))
    return np.maximum(1.0, np.maximum.reduce(terms))


def validate(problem: ProblemInstance, n_samples: int = 101) -> ValidationReport:
    """Check the problem's invariants; violations are collected, never raised.

    Positivity of ``k`` (and vanishing ``k'`` under ``k_constant``) is
    spot-checked on ``n_samples`` equispaced points.  The exact solution, if
    present, must satisfy the PDE at 11 points up to ``1e-6 * scale`` where
    ``scale = max(1, |f|, |k u''|, |nu u'|)``: steep layers make the balancing
    terms much larger than ``f``.
    """
    report = ValidationReport(problem.name)
    a, b = problem.a, problem.b
    if not a < b:
        report.add("domain", f"({a}, {b})", "requires a < b")
        return report

    xs = np.linspace(a, b, n_samples)
    c = problem.coefficients
    kv = c.k(xs)
    bad = np.flatnonzero(~(kv > 0))
    if bad.size:
        report.add(
            "positivity",
            f"x={xs[bad[0]]:.6g}",
            f"k <= 0 at {bad.size} of {n_samples} sample points",
        )
    if c.k_constant:
        kp = c.k_prime(xs)
        if np.any(kp != 0.0):
            report.add("k_constant", f"x={xs[np.argmax(kp != 0)]:.6g}", "k' is not identically 0")

    for side, spec in (("left", problem.left), ("right", problem.right)):
        if spec.is_degenerate:
            report.add("boundary", side, "alpha and beta are both zero")

    if problem.exact is not None:
        pts = np.linspace(a, b, 11)
        res = np.abs(pde_residual(problem, pts))
        tol = 1e-6 * _residual_scale(problem, pts)
        for x, r, t in zip(pts, res, tol):
            if not r < t:
                report.add("residual", f"x={x:.6g}", f"|k u'' + nu u' - f| = {r:.3e} >= {t:.3e}")
    return report
