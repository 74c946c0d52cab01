"""scikit-learn style front end for the three solvers.

Each estimator is configured through constructor parameters (so
``get_params``/``set_params``/``clone`` work), ``fit`` takes a
:class:`~convdiff1d.problem.ProblemInstance`, and ``predict`` evaluates the
method's reconstruction of the discrete solution at arbitrary points.

>>> from convdiff1d import preset
>>> est = FiniteElementSolver(n_cells=40).fit(preset("ex3_dirichlet"))
>>> float(est.predict([0.0, 1.0])[1])
1.0
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import fd, fem, mimetic
from .analysis import SolutionField, error_report
from .banded import condition_estimate_1norm, lu_factor, solve
from .mesh import build_mesh
from .quadrature import gauss_rule
from .validation import check_method, check_n_cells, check_problem


class _SolverBase(RegressorMixin, BaseEstimator):
    method = None

    def _assemble(self, p, mesh):
        raise NotImplementedError

    def _field(self, values, mesh) -> SolutionField:
        raise NotImplementedError

    def fit(self, problem, y=None):
        """Assemble and solve the discrete system for ``problem``.

        ``y`` is ignored; it exists for pipeline compatibility.
        """
        p = check_problem(problem)
        n = check_n_cells(self.n_cells)
        self.mesh_ = build_mesh(p.a, p.b, n)
        self.system_ = self._assemble(p, self.mesh_)
        self.factors_ = lu_factor(self.system_.A)
        values = solve(self.factors_, self.system_.rhs)
        self.solution_ = self._field(values, self.mesh_)
        self.problem_ = p
        return self

    def predict(self, X):
        check_is_fitted(self, "solution_")
        x = check_array(X, ensure_2d=False, dtype=float)
        if x.ndim == 2:
            if x.shape[1] != 1:
                raise ValueError(f"expected one coordinate per sample, got shape {x.shape}")
            x = x[:, 0]
        return self.solution_.evaluate(x)

    def error_report(self, q=None):
        check_is_fitted(self, "solution_")
        return error_report(self.solution_, self.problem_, q)

    def condition_estimate(self) -> float:
        check_is_fitted(self, "factors_")
        return condition_estimate_1norm(self.factors_, self.system_.A)


class MimeticSolver(_SolverBase):
    """Castillo-Grone mimetic scheme.

    Parameters
    ----------
    n_cells : int
        Number of uniform cells.
    diffusion : {"flux", "centered"}
        ``D (k G U)`` or ``k(x_c) (D G U)``; identical for constant ``k``.
    convection : {"right", "average"}
        Which nodal gradient feeds the convective term of a cell.
    """

    method = "mim"

    def __init__(self, n_cells=100, diffusion="flux", convection="right"):
        self.n_cells = n_cells
        self.diffusion = diffusion
        self.convection = convection

    def _assemble(self, p, mesh):
        return mimetic.assemble_mimetic(
            p, mesh, diffusion=self.diffusion, convection=self.convection
        )

    def _field(self, values, mesh):
        return SolutionField("mim", mesh.mim_points, values, "pc_cells", mesh)


class FiniteDifferenceSolver(_SolverBase):
    """Centered finite differences with ghost-node Robin closure.

    ``reconstruction`` selects how nodal values are extended between nodes
    for ``predict`` and the L2 norm (``"pc_dual"`` or ``"pc_left"``).
    """

    method = "fd"

    def __init__(self, n_cells=100, reconstruction="pc_dual"):
        self.n_cells = n_cells
        self.reconstruction = reconstruction

    def _assemble(self, p, mesh):
        return fd.assemble_fd(p, mesh)

    def _field(self, values, mesh):
        return SolutionField(
            "fd", mesh.nodes, values, self.reconstruction, mesh,
            override=self.reconstruction != "pc_dual",
        )


class FiniteElementSolver(_SolverBase):
    """Linear Galerkin elements; ``quad_order`` Gauss points per element."""

    method = "fem"

    def __init__(self, n_cells=100, quad_order=fem.DEFAULT_QUADRATURE):
        self.n_cells = n_cells
        self.quad_order = quad_order

    def _assemble(self, p, mesh):
        return fem.assemble_fem(p, mesh, gauss_rule(self.quad_order))

    def _field(self, values, mesh):
        return SolutionField("fem", mesh.nodes, values, "p_linear", mesh)


_SOLVERS = {"fd": FiniteDifferenceSolver, "mim": MimeticSolver, "fem": FiniteElementSolver}


def make_solver(method: str, n_cells: int = 100, **params) -> _SolverBase:
    """Estimator for ``method`` (``fd``, ``mim`` or ``fem``)."""
    return _SOLVERS[check_method(method)](n_cells=n_cells, **params)


def solver_params(method: str, quad_order=None, fd_reconstruction=None, **mimetic_params) -> dict:
    """Keep only the options that apply to ``method``."""
    method = check_method(method)
    if method == "fem" and quad_order is not None:
        return {"quad_order": quad_order}
    if method == "fd" and fd_reconstruction is not None:
        return {"reconstruction": fd_reconstruction}
    if method == "mim":
        return {k: v for k, v in mimetic_params.items() if v is not None}
    return {}


def residual_norm(est: _SolverBase) -> float:
    """``max |A U - rhs|`` of the fitted system; a cheap sanity check."""
    check_is_fitted(est, "solution_")
    r = est.system_.A @ est.solution_.values - est.system_.rhs
    return float(np.abs(r).max())
