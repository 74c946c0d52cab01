"""Centered second-order finite differences on the nodes.

Interior rows, scaled by ``h**2``::

    (k_i - nu_i h/2) U_{i-1} - 2 k_i U_i + (k_i + nu_i h/2) U_{i+1} = h**2 f_i

A Robin end is closed with a ghost node: the centered approximation of
``alpha u + beta u' = gamma`` gives ``U_{-1}`` (or ``U_{N+1}``), which is
substituted into the interior stencil written at the boundary node.  A
Dirichlet end (``beta == 0``) replaces the row by ``U = gamma / alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import SolutionField
from .banded import BandedMatrix, lu_factor, solve
from .mesh import StaggeredMesh, build_mesh
from .problem import ProblemInstance
from .validation import check_n_cells, check_problem


@dataclass
class FdSystem:
    A: BandedMatrix
    rhs: np.ndarray
    mesh: StaggeredMesh


def assemble_fd(p: ProblemInstance, mesh: StaggeredMesh) -> FdSystem:
    n, h = mesh.n_cells, mesh.h
    x = mesh.nodes
    c = p.coefficients
    k, nu = c.k(x), c.nu(x)
    lower = k - nu * h / 2.0
    upper = k + nu * h / 2.0

    A = BandedMatrix(n + 1, 1, 1)
    # interior rows 1..N-1
    A.set_diagonal(0, -2.0 * k[1:-1], start=1)
    A.set_diagonal(-1, lower[1:-1], start=1)
    A.set_diagonal(1, upper[1:-1], start=1)
    rhs = h * h * c.f(x)

    left, right = p.left, p.right
    if left.is_dirichlet:
        A.set_row(0, {0: 1.0})
        rhs[0] = left.dirichlet_value
    else:
        # U_{-1} = U_1 + (2h/beta) (alpha U_0 - gamma)
        A.set_row(0, {0: lower[0] * 2.0 * h * left.alpha / left.beta - 2.0 * k[0], 1: 2.0 * k[0]})
        rhs[0] += lower[0] * 2.0 * h / left.beta * left.gamma
    if right.is_dirichlet:
        A.set_row(n, {n: 1.0})
        rhs[n] = right.dirichlet_value
    else:
        # U_{N+1} = U_{N-1} + (2h/beta) (gamma - alpha U_N)
        A.set_row(
            n,
            {n - 1: 2.0 * k[n], n: -(upper[n] * 2.0 * h * right.alpha / right.beta + 2.0 * k[n])},
        )
        rhs[n] -= upper[n] * 2.0 * h / right.beta * right.gamma
    return FdSystem(A, rhs, mesh)


def solve_fd(p: ProblemInstance, n_cells: int) -> SolutionField:
    check_problem(p)
    mesh = build_mesh(p.a, p.b, check_n_cells(n_cells))
    system = assemble_fd(p, mesh)
    U = solve(lu_factor(system.A), system.rhs)
    return SolutionField("fd", mesh.nodes, U, "pc_dual", mesh)
