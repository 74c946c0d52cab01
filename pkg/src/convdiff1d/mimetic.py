"""Second-order Castillo-Grone mimetic discretization.

Unknowns sit at ``(x_0, x_1/2, ..., x_N-1/2, x_N)``.  The gradient ``G`` maps
them to the ``N + 1`` nodes, with one-sided second-order rows at both ends;
the divergence ``D`` maps nodal values back to the cell centers, padded with a
zero row at each end so that ``D @ G`` is square.

Interior equations are collocated at the cell centers.  Two forms of the
diffusion term are available:

``"flux"`` (default)
    ``D (k G U)`` with ``k`` sampled at the nodes, plus ``(nu - k') G U`` for
    the convective remainder, so that ``k u'' + nu u' = (k u')' + (nu - k') u'``.
``"centered"``
    ``k(x_c) (D G U)_c + nu(x_c) (...)``.

The nodal gradient in the convective term is moved to the equation's row
either by taking the right node of the cell (``convection="right"``, default)
or by averaging the two nodes of the cell (``convection="average"``).  The
right-node choice is only first-order accurate for the convective term.
Boundary rows impose ``alpha u + beta (G U) = gamma`` with the one-sided
gradient rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .analysis import SolutionField
from .banded import BandedMatrix, lu_factor, solve
from .mesh import StaggeredMesh, build_mesh
from .problem import ProblemInstance
from .validation import check_n_cells, check_problem

DIFFUSION_FORMS = ("flux", "centered")
CONVECTION_FORMS = ("right", "average")


@dataclass(frozen=True)
class MimeticOperators:
    G: sp.csr_matrix
    D: sp.csr_matrix
    h: float


@dataclass
class MimeticSystem:
    A: BandedMatrix
    rhs: np.ndarray
    mesh: StaggeredMesh


def build_gradient(mesh: StaggeredMesh) -> sp.csr_matrix:
    """``(N+1) x (N+2)`` nodal gradient of values at the mimetic points."""
    n = mesh.n_cells
    rows = [0, 0, 0]
    cols = [0, 1, 2]
    vals = [-8.0 / 3.0, 3.0, -1.0 / 3.0]
    i = np.arange(1, n)
    rows += list(np.repeat(i, 2))
    cols += list(np.column_stack([i, i + 1]).ravel())
    vals += [-1.0, 1.0] * (n - 1)
    rows += [n, n, n]
    cols += [n - 1, n, n + 1]
    vals += [1.0 / 3.0, -3.0, 8.0 / 3.0]
    G = sp.csr_matrix((vals, (rows, cols)), shape=(n + 1, n + 2))
    return G / mesh.h


def build_divergence(mesh: StaggeredMesh) -> sp.csr_matrix:
    """``(N+2) x (N+1)`` cell divergence of nodal values; first and last rows are zero."""
    n = mesh.n_cells
    c = np.arange(n)
    rows = np.repeat(c + 1, 2)
    cols = np.column_stack([c, c + 1]).ravel()
    vals = np.tile([-1.0, 1.0], n)
    D = sp.csr_matrix((vals, (rows, cols)), shape=(n + 2, n + 1))
    return D / mesh.h


def build_operators(mesh: StaggeredMesh) -> MimeticOperators:
    return MimeticOperators(build_gradient(mesh), build_divergence(mesh), mesh.h)


def gradient_at_centers(G_values) -> np.ndarray:
    """Average adjacent nodal gradients onto the ``N`` cell centers."""
    g = np.asarray(G_values, dtype=float)
    if g.ndim != 1 or g.size < 2:
        raise ValueError(f"need a nodal vector of length N+1 >= 2, got shape {g.shape}")
    return 0.5 * (g[:-1] + g[1:])


def _node_to_center(n: int, kind: str) -> sp.csr_matrix:
    """``N x (N+1)`` matrix moving nodal quantities to the cells."""
    c = np.arange(n)
    if kind == "average":
        return sp.csr_matrix(
            (np.full(2 * n, 0.5), (np.repeat(c, 2), np.column_stack([c, c + 1]).ravel())),
            shape=(n, n + 1),
        )
    if kind == "right":
        return sp.csr_matrix((np.ones(n), (c, c + 1)), shape=(n, n + 1))
    raise ValueError(f"unknown convection form {kind!r}; expected one of {CONVECTION_FORMS}")


def assemble_mimetic(
    p: ProblemInstance,
    mesh: StaggeredMesh,
    diffusion: str = "flux",
    convection: str = "right",
) -> MimeticSystem:
    if diffusion not in DIFFUSION_FORMS:
        raise ValueError(f"unknown diffusion form {diffusion!r}; expected one of {DIFFUSION_FORMS}")
    n = mesh.n_cells
    c = p.coefficients
    ops = build_operators(mesh)
    G, D = ops.G, ops.D
    nodes, centers = mesh.nodes, mesh.centers
    S = _node_to_center(n, convection)

    # pad the N cell rows with empty boundary rows
    pad = sp.vstack([sp.csr_matrix((1, n)), sp.identity(n, format="csr"), sp.csr_matrix((1, n))])
    if diffusion == "flux":
        diff = D @ sp.diags(c.k(nodes)) @ G
        v_nodes = c.nu(nodes) - c.k_prime(nodes)
        v_centers = c.nu(centers) - c.k_prime(centers)
    else:
        diff = pad @ sp.diags(c.k(centers)) @ (D[1:-1] @ G)
        v_nodes = c.nu(nodes)
        v_centers = c.nu(centers)
    if convection == "right":
        conv = S @ sp.diags(v_nodes) @ G
    else:
        conv = sp.diags(v_centers) @ S @ G
    interior = diff + pad @ conv

    A = BandedMatrix.from_sparse(interior.tocsr(), 2, 2)
    rhs = np.concatenate(([0.0], c.f(centers), [0.0]))

    G0 = G.getrow(0).toarray().ravel()
    GN = G.getrow(n).toarray().ravel()
    left, right = p.left, p.right
    row0 = {0: left.alpha}
    rowN = {n + 1: right.alpha}
    if not left.is_dirichlet:
        for j in (0, 1, 2):
            row0[j] = row0.get(j, 0.0) + left.beta * G0[j]
    if not right.is_dirichlet:
        for j in (n - 1, n, n + 1):
            rowN[j] = rowN.get(j, 0.0) + right.beta * GN[j]
    A.set_row(0, row0)
    A.set_row(n + 1, rowN)
    rhs[0] = left.gamma
    rhs[-1] = right.gamma
    return MimeticSystem(A, rhs, mesh)


def solve_mimetic(
    p: ProblemInstance,
    n_cells: int,
    diffusion: str = "flux",
    convection: str = "right",
) -> SolutionField:
    check_problem(p)
    mesh = build_mesh(p.a, p.b, check_n_cells(n_cells))
    system = assemble_mimetic(p, mesh, diffusion=diffusion, convection=convection)
    U = solve(lu_factor(system.A), system.rhs)
    return SolutionField("mim", mesh.mim_points, U, "pc_cells", mesh)
