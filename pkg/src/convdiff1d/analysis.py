"""Error norms, convergence orders and oscillation diagnostics.

The max norm only looks at interior unknowns: cell centers for the mimetic
scheme, nodes ``1..N-1`` for finite differences and finite elements.  The L2
norm is the continuous one, computed against a reconstruction of the discrete
solution:

``pc_cells``
    each center value held constant over its cell (mimetic);
``pc_dual``
    each nodal value held constant over ``[x_i - h/2, x_i + h/2]`` (FD);
``p_linear``
    the piecewise-linear nodal interpolant (FEM).

``pc_left`` (each nodal value held on the cell to its right) is available as
an explicit override for nodal methods.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .mesh import StaggeredMesh
from .problem import ExactSolution, ProblemInstance
from .quadrature import QuadratureRule, gauss_rule

logger = logging.getLogger(__name__)
_warned_peclet = set()

METHODS = ("fd", "mim", "fem")
RECONSTRUCTIONS = ("pc_cells", "pc_dual", "p_linear", "pc_left")
DEFAULT_RECONSTRUCTION = {"mim": "pc_cells", "fd": "pc_dual", "fem": "p_linear"}


@dataclass(frozen=True)
class SolutionField:
    method: str
    locations: np.ndarray
    values: np.ndarray
    reconstruction: str
    mesh: StaggeredMesh
    override: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.reconstruction not in RECONSTRUCTIONS:
            raise ValueError(f"unknown reconstruction {self.reconstruction!r}")
        if len(self.locations) != len(self.values):
            raise ValueError("locations and values differ in length")
        if np.any(np.diff(self.locations) < 0):
            raise ValueError("locations must be sorted ascending")
        if self.method == "mim" and self.reconstruction != "pc_cells":
            raise ValueError("mimetic fields only reconstruct as 'pc_cells'")
        if not self.override and DEFAULT_RECONSTRUCTION[self.method] != self.reconstruction:
            raise ValueError(
                f"method {self.method!r} reconstructs as "
                f"{DEFAULT_RECONSTRUCTION[self.method]!r}; pass override=True to change it"
            )

    @property
    def n_cells(self) -> int:
        return self.mesh.n_cells

    def with_reconstruction(self, reconstruction: str) -> "SolutionField":
        return SolutionField(
            self.method, self.locations, self.values, reconstruction, self.mesh, override=True
        )

    def interior_values(self) -> np.ndarray:
        return self.values[1:-1]

    def interior_locations(self) -> np.ndarray:
        return self.locations[1:-1]

    def pieces(self):
        """``(left, right, kind, data)`` describing the reconstruction piece by piece.

        ``kind`` is ``"const"`` (``data`` holds one value per piece) or
        ``"linear"`` (``data`` holds end values, shape ``(n, 2)``).
        """
        m = self.mesh
        nodes = m.nodes
        if self.reconstruction == "pc_cells":
            # cell i carries its center value; the unknowns at a and b carry no measure
            if len(self.values) == m.n_cells + 2:
                vals = self.values[1:-1]
            else:
                vals = self.values
            return nodes[:-1], nodes[1:], "const", vals
        if self.reconstruction == "pc_dual":
            half = np.concatenate(([m.a], m.centers, [m.b]))
            return half[:-1], half[1:], "const", self.values
        if self.reconstruction == "pc_left":
            if len(self.values) != m.n_cells + 1:
                raise ValueError("pc_left needs nodal values")
            return nodes[:-1], nodes[1:], "const", self.values[:-1]
        ends = np.stack([self.values[:-1], self.values[1:]], axis=1)
        return nodes[:-1], nodes[1:], "linear", ends

    def evaluate(self, x) -> np.ndarray:
        """Value of the reconstruction at ``x`` (points outside ``[a, b]`` are clipped)."""
        x = np.clip(np.asarray(x, dtype=float), self.mesh.a, self.mesh.b)
        left, right, kind, data = self.pieces()
        idx = np.clip(np.searchsorted(right, x, side="left"), 0, len(left) - 1)
        if kind == "const":
            return np.asarray(data)[idx]
        t = (x - left[idx]) / (right[idx] - left[idx])
        return data[idx, 0] * (1.0 - t) + data[idx, 1] * t


@dataclass
class ErrorReport:
    err_max: float
    err_l2: float
    n_cells: int
    h: float
    diagnostics: dict = field(default_factory=dict)


def _require_exact(exact):
    if exact is None:
        raise ValueError("error norms need an exact solution")
    return exact


def max_norm_error(s: SolutionField, exact: Optional[ExactSolution]) -> float:
    exact = _require_exact(exact)
    diff = s.interior_values() - exact.u(s.interior_locations())
    return float(np.max(np.abs(diff)))


def l2_error(
    s: SolutionField, exact: Optional[ExactSolution], q: Optional[QuadratureRule] = None
) -> float:
    """Continuous L2 distance between the reconstruction of ``s`` and ``exact.u``."""
    exact = _require_exact(exact)
    q = gauss_rule(5) if q is None else q
    left, right, kind, data = s.pieces()
    width = (right - left)[:, None]
    x = left[:, None] + width * q.points
    if kind == "const":
        recon = np.asarray(data)[:, None]
    else:
        recon = data[:, :1] * (1.0 - q.points) + data[:, 1:] * q.points
    err2 = (recon - exact.u(x)) ** 2
    return math.sqrt(float(np.sum(err2 * q.weights * width)))


def convergence_orders(errors) -> list:
    """Observed orders between consecutive ``(n, err)`` entries.

    Returns ``len(errors) - 1`` values; an entry is ``None`` when either error
    is not positive (the order is undefined there).

    >>> convergence_orders([(100, 1e-2), (200, 2.5e-3)])
    [2.0]
    """
    pairs = [(int(n), float(e)) for n, e in errors]
    ns = [n for n, _ in pairs]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError(f"cell counts must be strictly increasing, got {ns}")
    orders = []
    for (n0, e0), (n1, e1) in zip(pairs, pairs[1:]):
        if not (e0 > 0 and e1 > 0) or not (math.isfinite(e0) and math.isfinite(e1)):
            orders.append(None)
            continue
        orders.append(math.log(e0 / e1) / math.log(n1 / n0))
    return orders


def _is_constant(fn, a, b) -> bool:
    v = fn(np.linspace(a, b, 11))
    return bool(np.all(v == v[0]))


def peclet(p: ProblemInstance, n_cells: int) -> float:
    """Local Peclet number ``|nu| h / (2 k)``.

    Variable coefficients are sampled at the domain midpoint and a warning is
    logged once per problem name, since a single number then only describes
    that point.
    """
    h = (p.b - p.a) / n_cells
    c = p.coefficients
    x = 0.5 * (p.a + p.b)
    if not (_is_constant(c.k, p.a, p.b) and _is_constant(c.nu, p.a, p.b)) and p.name not in _warned_peclet:
        _warned_peclet.add(p.name)
        logger.warning("peclet for %s uses midpoint coefficients (approximate)", p.name)
    k = float(c.k(np.array([x]))[0])
    nu = float(c.nu(np.array([x]))[0])
    return abs(nu) * h / (2.0 * k)


def oscillation_count(s, rtol: float = 1e-10) -> int:
    """Number of sign changes between successive differences of the values.

    Differences no larger than ``rtol`` times the value range count as zero
    and are skipped, so roundoff on flat stretches is not reported.

    >>> oscillation_count([0.0, 0.1, -0.05, 0.2, 1.0])
    2
    """
    values = s.values if isinstance(s, SolutionField) else np.asarray(s, dtype=float)
    if len(values) < 3:
        raise ValueError("oscillation count needs at least three values")
    d = np.diff(values)
    scale = float(np.ptp(values))
    signs = np.sign(d[np.abs(d) > rtol * scale])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def error_report(
    s: SolutionField, p: ProblemInstance, q: Optional[QuadratureRule] = None
) -> ErrorReport:
    return ErrorReport(
        err_max=max_norm_error(s, p.exact),
        err_l2=l2_error(s, p.exact, q),
        n_cells=s.n_cells,
        h=s.mesh.h,
        diagnostics={"oscillations": oscillation_count(s), "peclet": peclet(p, s.n_cells)},
    )
