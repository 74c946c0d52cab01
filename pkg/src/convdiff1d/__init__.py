"""Three discretizations of the steady 1-D convection-diffusion equation.

``k(x) u'' + nu(x) u' = f`` on ``(a, b)`` with Robin/Dirichlet ends, solved by
a second-order mimetic scheme, centered finite differences and linear finite
elements, plus tools to measure and compare their convergence.
"""

from .analysis import (
    ErrorReport,
    SolutionField,
    convergence_orders,
    error_report,
    l2_error,
    max_norm_error,
    oscillation_count,
    peclet,
)
from .banded import (
    BandedMatrix,
    BandError,
    LUFactors,
    SingularMatrixError,
    condition_estimate_1norm,
    dense_solve_oracle,
    lu_factor,
    solve,
)
from .estimators import FiniteDifferenceSolver, FiniteElementSolver, MimeticSolver, make_solver
from .fd import assemble_fd, solve_fd
from .fem import assemble_fem, solve_fem
from .harness import (
    ConvergenceRow,
    ExperimentConfig,
    dump_solution,
    reproduce_table,
    run_experiment,
)
from .mesh import StaggeredMesh, build_mesh
from .mimetic import (
    assemble_mimetic,
    build_divergence,
    build_gradient,
    gradient_at_centers,
    solve_mimetic,
)
from .problem import (
    CoefficientSet,
    ExactSolution,
    ProblemInstance,
    RobinSpec,
    preset,
    validate,
)
from .quadrature import QuadratureRule, gauss_rule

__version__ = "0.1.0"

__all__ = [
    "BandError",
    "BandedMatrix",
    "CoefficientSet",
    "ConvergenceRow",
    "ErrorReport",
    "ExactSolution",
    "ExperimentConfig",
    "FiniteDifferenceSolver",
    "FiniteElementSolver",
    "LUFactors",
    "MimeticSolver",
    "ProblemInstance",
    "QuadratureRule",
    "RobinSpec",
    "SingularMatrixError",
    "SolutionField",
    "StaggeredMesh",
    "assemble_fd",
    "assemble_fem",
    "assemble_mimetic",
    "build_divergence",
    "build_gradient",
    "build_mesh",
    "condition_estimate_1norm",
    "convergence_orders",
    "dense_solve_oracle",
    "dump_solution",
    "error_report",
    "gauss_rule",
    "gradient_at_centers",
    "l2_error",
    "lu_factor",
    "make_solver",
    "max_norm_error",
    "oscillation_count",
    "peclet",
    "preset",
    "reproduce_table",
    "run_experiment",
    "solve",
    "solve_fd",
    "solve_fem",
    "solve_mimetic",
    "validate",
    "__version__",
]
