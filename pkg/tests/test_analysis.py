import logging
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from convdiff1d.analysis import (
    SolutionField,
    convergence_orders,
    error_report,
    l2_error,
    max_norm_error,
    oscillation_count,
    peclet,
)
from convdiff1d.estimators import make_solver
from convdiff1d.mesh import build_mesh
from convdiff1d.problem import ExactSolution, preset
from convdiff1d.quadrature import gauss_rule

identity = ExactSolution(lambda x: np.asarray(x, dtype=float), lambda x: np.ones_like(x))
sine = ExactSolution(np.sin, np.cos)


def exact_field(method, n, exact, reconstruction=None):
    m = build_mesh(0, 1, n)
    locs = m.mim_points if method == "mim" else m.nodes
    default = {"mim": "pc_cells", "fd": "pc_dual", "fem": "p_linear"}[method]
    rec = reconstruction or default
    return SolutionField(method, locs, exact.u(locs), rec, m, override=rec != default)


def test_zero_error_for_exact_values():
    for method in ("mim", "fd", "fem"):
        assert max_norm_error(exact_field(method, 8, sine), sine) == 0.0


def test_max_norm_sees_perturbed_center():
    s = exact_field("mim", 4, sine)
    s.values[2] += 0.01
    assert max_norm_error(s, sine) == pytest.approx(0.01, rel=1e-12)


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.sampled_from(["mim", "fd", "fem"]))
def test_max_norm_ignores_boundary_entries(d0, d1, method):
    s = exact_field(method, 6, sine)
    s.values[0] += d0
    s.values[-1] += d1
    assert max_norm_error(s, sine) == 0.0


def test_l2_constant_is_zero():
    c = ExactSolution(lambda x: np.full_like(np.asarray(x, dtype=float), 2.5), lambda x: 0 * x)
    for method in ("mim", "fd", "fem"):
        assert l2_error(exact_field(method, 7, c), c) == pytest.approx(0.0, abs=1e-15)


def test_l2_pc_dual_of_identity():
    s = exact_field("fd", 10, identity)
    assert l2_error(s, identity) == pytest.approx(0.1 / (2 * math.sqrt(3)), rel=1e-12)


def test_l2_linear_interpolant_of_identity_is_exact():
    assert l2_error(exact_field("fem", 10, identity), identity) == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize(
    "method,reconstruction,order",
    [("mim", None, 1.0), ("fd", None, 1.0), ("fd", "pc_left", 1.0), ("fem", None, 2.0)],
)
def test_l2_reconstruction_orders(method, reconstruction, order):
    e = [l2_error(exact_field(method, n, sine, reconstruction), sine) for n in (40, 80)]
    assert math.log2(e[0] / e[1]) == pytest.approx(order, abs=0.1)


def test_l2_quadrature_choice_is_converged():
    s = make_solver("fem", 1000).fit(preset("ex1")).solution_
    e5 = l2_error(s, preset("ex1").exact, gauss_rule(5))
    e8 = l2_error(s, preset("ex1").exact, gauss_rule(8))
    assert abs(e5 - e8) <= 1e-6 * e8


def test_missing_exact_solution():
    s = exact_field("fd", 5, sine)
    with pytest.raises(ValueError):
        max_norm_error(s, None)
    with pytest.raises(ValueError):
        l2_error(s, None)


def test_field_checks():
    m = build_mesh(0, 1, 4)
    with pytest.raises(ValueError):
        SolutionField("fd", m.nodes, m.nodes, "pc_cells", m)
    with pytest.raises(ValueError):
        SolutionField("fd", m.nodes[::-1], m.nodes, "pc_dual", m)
    with pytest.raises(ValueError):
        SolutionField("fd", m.nodes, m.nodes[:-1], "pc_dual", m)
    with pytest.raises(ValueError):
        SolutionField("mim", m.mim_points, m.mim_points, "pc_dual", m, override=True)
    ok = SolutionField("fd", m.nodes, m.nodes, "pc_left", m, override=True)
    assert ok.reconstruction == "pc_left"


def test_evaluate_reconstructions():
    m = build_mesh(0, 1, 4)
    fem = SolutionField("fem", m.nodes, m.nodes**2, "p_linear", m)
    assert fem.evaluate(0.125) == pytest.approx(0.03125)
    fd = SolutionField("fd", m.nodes, m.nodes**2, "pc_dual", m)
    np.testing.assert_allclose(fd.evaluate([0.1, 0.2, 0.9]), [0.0, 0.0625, 1.0])
    mim = SolutionField("mim", m.mim_points, m.mim_points, "pc_cells", m)
    np.testing.assert_allclose(mim.evaluate([0.0, 0.3, 1.0]), [0.125, 0.375, 0.875])


def test_orders_quadratic_and_linear():
    ns = [100, 200, 400]
    np.testing.assert_allclose(convergence_orders([(n, 3.0 / n**2) for n in ns]), 2.0, atol=1e-12)
    np.testing.assert_allclose(convergence_orders([(n, 0.5 / n) for n in ns]), 1.0, atol=1e-12)


@given(
    errs=st.lists(st.floats(1e-12, 1.0), min_size=2, max_size=6),
    c=st.floats(1e-6, 1e6),
)
def test_orders_scale_invariant(errs, c):
    ns = [100 * 2**i for i in range(len(errs))]
    base = convergence_orders(list(zip(ns, errs)))
    scaled = convergence_orders([(n, c * e) for n, e in zip(ns, errs)])
    np.testing.assert_allclose(scaled, base, atol=1e-12)


def test_orders_flag_nonpositive_errors():
    assert convergence_orders([(10, 1.0), (20, 0.0), (40, 0.1)]) == [None, None]
    with pytest.raises(ValueError):
        convergence_orders([(20, 1.0), (10, 0.5)])


def test_peclet_values():
    p = preset("ex3_dirichlet")
    assert peclet(p, 50) == pytest.approx(110.5 * 0.02 / (2 * 1.052))
    assert peclet(p, 50) == pytest.approx(1.0504, abs=1e-4)
    assert peclet(p, 80) == pytest.approx(0.6565, abs=1e-4)
    assert peclet(preset("ex1"), 50) == 0.0


def test_peclet_variable_coefficients_warns(caplog):
    from convdiff1d import analysis

    analysis._warned_peclet.discard("ex2")
    with caplog.at_level(logging.WARNING, logger="convdiff1d.analysis"):
        peclet(preset("ex2"), 100)
    assert "approximate" in caplog.text


def test_oscillation_examples():
    assert oscillation_count([0, 0.1, -0.05, 0.2, 1]) == 2
    assert oscillation_count(np.linspace(0, 1, 50)) == 0
    with pytest.raises(ValueError):
        oscillation_count([1.0, 2.0])


def test_oscillations_ex3_fd():
    p = preset("ex3_dirichlet")
    assert oscillation_count(make_solver("fd", 50).fit(p).solution_) >= 1
    assert oscillation_count(make_solver("fd", 200).fit(p).solution_) == 0


def test_error_report_fields():
    p = preset("ex3_dirichlet")
    rep = error_report(make_solver("fem", 100).fit(p).solution_, p)
    assert rep.err_max >= 0 and rep.err_l2 >= 0
    assert rep.n_cells == 100 and rep.h == pytest.approx(0.01)
    assert set(rep.diagnostics) == {"oscillations", "peclet"}


def test_ex1_fem_l2_order():
    p = preset("ex1")
    e = [l2_error(make_solver("fem", n).fit(p).solution_, p.exact) for n in (500, 1000)]
    assert math.log2(e[0] / e[1]) == pytest.approx(2.0, abs=0.01)
