import numpy as np
import pytest

from convdiff1d.problem import CoefficientSet, ExactSolution, ProblemInstance, RobinSpec, constant

# criterion lines recorded by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def linear_problem(slope, intercept, left, right, k=1.0, nu=0.0):
    """Problem whose exact solution is ``slope * x + intercept`` on (0, 1).

    ``left``/``right`` are ``(alpha, beta)``; gamma is computed from the solution.
    """

    def u(x):
        return slope * np.asarray(x, dtype=float) + intercept

    def du(x):
        return np.full_like(np.asarray(x, dtype=float), slope)

    coeffs = CoefficientSet(
        k=constant(k), k_prime=constant(0.0), nu=constant(nu), f=constant(nu * slope),
        k_constant=True,
    )
    la, lb = left
    ra, rb = right
    return ProblemInstance(
        domain=(0.0, 1.0),
        coefficients=coeffs,
        left=RobinSpec(la, lb, la * intercept + lb * slope),
        right=RobinSpec(ra, rb, ra * (slope + intercept) + rb * slope),
        exact=ExactSolution(u, du),
        name="linear",
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def linear_tolerance(est, scale):
    """Allowed max error for a linear exact solution.

    ``1e-11`` plus the usual forward-error bound ``4 eps kappa_1`` of a
    backward-stable solve, so ill-conditioned discrete systems are judged
    against what floating point can deliver.
    """
    return (1e-11 + 4 * np.finfo(float).eps * est.condition_estimate()) * scale


def well_posed(left, right, k=1.0, nu=0.0, tol=1e-6):
    """True when ``k u'' + nu u' = 0`` with these homogeneous end conditions only has ``u = 0``.

    The homogeneous solutions are spanned by ``1`` and
    ``phi(x) = (1 - exp(-lam x)) / lam`` with ``lam = nu / k``.
    """
    lam = nu / k
    if lam == 0.0:
        phi = lambda x: x
        dphi = lambda x: 1.0
    else:
        phi = lambda x: -np.expm1(-lam * x) / lam
        dphi = lambda x: np.exp(-lam * x)
    (la, lb), (ra, rb) = left, right
    M = np.array([[la, la * phi(0.0) + lb * dphi(0.0)], [ra, ra * phi(1.0) + rb * dphi(1.0)]])
    return abs(np.linalg.det(M)) > tol * max(1.0, np.abs(M).max()) ** 2
