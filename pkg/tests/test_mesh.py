import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from convdiff1d.mesh import build_mesh


def test_unit_mesh_four_cells():
    m = build_mesh(0, 1, 4)
    assert m.h == 0.25
    np.testing.assert_array_equal(m.mim_points, [0, 0.125, 0.375, 0.625, 0.875, 1])
    np.testing.assert_array_equal(m.centers, [0.125, 0.375, 0.625, 0.875])
    np.testing.assert_array_equal(m.nodes, [0, 0.25, 0.5, 0.75, 1])


@pytest.mark.parametrize("args", [(0, 1, 1), (1, 1, 4), (2, 1, 4), (0, 1, 2.5)])
def test_rejects_bad_input(args):
    with pytest.raises(ValueError):
        build_mesh(*args)


@given(
    a=st.floats(-10, 10),
    width=st.floats(1e-3, 100),
    n=st.integers(2, 500),
)
def test_layout_invariants(a, width, n):
    b = a + width
    m = build_mesh(a, b, n)
    nodes, centers, mim = m.nodes, m.centers, m.mim_points
    assert len(nodes) == n + 1 and len(centers) == n and len(mim) == n + 2
    assert nodes[0] == a and nodes[-1] == b
    assert np.all(np.diff(nodes) > 0)
    assert np.max(np.abs(np.diff(nodes) - m.h)) <= 1e-12 * max(m.h, 1.0) * max(1.0, abs(a), abs(b))
    np.testing.assert_array_equal(centers, (nodes[:-1] + nodes[1:]) / 2)
    assert mim[0] == a and mim[-1] == b
    np.testing.assert_array_equal(mim[1:-1], centers)
