"""Linear Galerkin finite elements on the nodes.

Multiplying ``k u'' + nu u' = f`` by a test function ``v`` and integrating
the diffusion term by parts gives ``B(u, v) = l(v)`` with

    B(u, v) = th_a alpha_a u(a) - th_b alpha_b u(b) - int (k u'v' + k' u'v - nu u'v)
    l(v)    = int f v + th_a gamma_a - th_b gamma_b

where ``th_a = k(a) v(a) / beta_a`` and ``th_b = k(b) v(b) / beta_b`` come
from eliminating ``u'`` at the ends through the Robin relations.  Dirichlet
ends are imposed by eliminating the nodal unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .analysis import SolutionField
from .banded import BandedMatrix, lu_factor, solve
from .mesh import StaggeredMesh, build_mesh
from .problem import ProblemInstance
from .quadrature import QuadratureRule, gauss_rule
from .validation import check_n_cells, check_problem

DEFAULT_QUADRATURE = 3


@dataclass
class FemSystem:
    A: BandedMatrix
    rhs: np.ndarray
    mesh: StaggeredMesh
    constrained: dict = field(default_factory=dict)


def element_matrices(p: ProblemInstance, mesh: StaggeredMesh, q: QuadratureRule):
    """Per-element 2x2 blocks of ``B(phi_j, phi_i)`` and load pairs ``int f phi_i``.

    Returns ``(K, F)`` with shapes ``(N, 2, 2)`` and ``(N, 2)``.
    """
    h = mesh.h
    nodes = mesh.nodes
    c = p.coefficients
    t, w = q.points, q.weights
    xq = nodes[:-1, None] + h * t[None, :]
    wq = w * h
    k, kp, nu, f = c.k(xq), c.k_prime(xq), c.nu(xq), c.f(xq)

    phi = np.stack([1.0 - t, t])  # (2, nq)
    dphi = np.array([-1.0, 1.0]) / h
    K = np.empty((mesh.n_cells, 2, 2))
    for i in range(2):
        for j in range(2):
            integrand = k * dphi[j] * dphi[i] + (kp - nu) * dphi[j] * phi[i]
            K[:, i, j] = -(integrand * wq).sum(axis=1)
    F = np.stack([(f * phi[i] * wq).sum(axis=1) for i in range(2)], axis=1)
    return K, F


def assemble_fem(
    p: ProblemInstance, mesh: StaggeredMesh, q: Optional[QuadratureRule] = None
) -> FemSystem:
    q = gauss_rule(DEFAULT_QUADRATURE) if q is None else q
    n = mesh.n_cells
    K, F = element_matrices(p, mesh, q)

    diag = np.zeros(n + 1)
    diag[:-1] += K[:, 0, 0]
    diag[1:] += K[:, 1, 1]
    A = BandedMatrix(n + 1, 1, 1)
    A.set_diagonal(0, diag)
    A.set_diagonal(1, K[:, 0, 1])
    A.set_diagonal(-1, K[:, 1, 0], start=1)
    rhs = np.zeros(n + 1)
    rhs[:-1] += F[:, 0]
    rhs[1:] += F[:, 1]

    c = p.coefficients
    left, right = p.left, p.right
    ka = float(c.k(np.array([mesh.a]))[0])
    kb = float(c.k(np.array([mesh.b]))[0])
    if not left.is_dirichlet:
        A.add(0, 0, ka * left.alpha / left.beta)
        rhs[0] += ka * left.gamma / left.beta
    if not right.is_dirichlet:
        A.add(n, n, -kb * right.alpha / right.beta)
        rhs[n] -= kb * right.gamma / right.beta

    constrained = {}
    for idx, spec in ((0, left), (n, right)):
        if spec.is_dirichlet:
            constrained[idx] = spec.dirichlet_value
    for idx, value in constrained.items():
        for r in (idx - 1, idx + 1):
            if 0 <= r <= n and r not in constrained:
                rhs[r] -= A[r, idx] * value
                A[r, idx] = 0.0
        A.set_row(idx, {idx: 1.0})
        rhs[idx] = value
    return FemSystem(A, rhs, mesh, constrained)


def solve_fem(
    p: ProblemInstance, n_cells: int, q: Optional[QuadratureRule] = None
) -> SolutionField:
    check_problem(p)
    mesh = build_mesh(p.a, p.b, check_n_cells(n_cells))
    system = assemble_fem(p, mesh, q)
    U = solve(lu_factor(system.A), system.rhs)
    return SolutionField("fem", mesh.nodes, U, "p_linear", mesh)
