"""Uniform staggered 1-D mesh.

::

    x_0      x_1/2     x_1      x_3/2     x_2   ...   x_N-1/2     x_N
    |----------o--------|---------o--------|    ...  -----o---------|
    node     center    node     center   node          center    node

The mimetic unknowns live at ``(x_0, x_1/2, ..., x_N-1/2, x_N)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StaggeredMesh:
    a: float
    b: float
    n_cells: int

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_cells

    @property
    def nodes(self) -> np.ndarray:
        # a + i*h rather than cumulative sums, so roundoff does not accumulate
        x = self.a + np.arange(self.n_cells + 1) * self.h
        x[-1] = self.b
        return x

    @property
    def centers(self) -> np.ndarray:
        x = self.nodes
        return (x[:-1] + x[1:]) / 2.0

    @property
    def mim_points(self) -> np.ndarray:
        return np.concatenate(([self.a], self.centers, [self.b]))

    def __len__(self):
        return self.n_cells


def build_mesh(a: float, b: float, n_cells: int) -> StaggeredMesh:
    """Uniform mesh of ``n_cells`` cells on ``[a, b]``.

    Raises
    ------
    ValueError
        If ``a >= b`` or ``n_cells < 2``.
    """
    if not a < b:
        raise ValueError(f"mesh needs a < b, got a={a}, b={b}")
    if int(n_cells) != n_cells or n_cells < 2:
        raise ValueError(f"mesh needs an integer n_cells >= 2, got {n_cells}")
    return StaggeredMesh(float(a), float(b), int(n_cells))
