import numpy as np
import numpy.polynomial.legendre as leg
import pytest

from hierbgk.basis import gauss_legendre_rule, nodal_basis


def test_rule_matches_legendre_on_unit_cell():
    # reference element is [-1/2, 1/2]: nodes and weights are the
    # standard [-1,1] Gauss-Legendre values halved
    for n in range(1, 9):
        rule = gauss_legendre_rule(n)
        xs, ws = leg.leggauss(n)
        assert np.allclose(rule.nodes, xs / 2.0, atol=1e-15)
        assert np.allclose(rule.weights, ws / 2.0, atol=1e-15)
        assert abs(rule.weights.sum() - 1.0) < 1e-14


def test_rule_integrates_polynomials_exactly():
    rng = np.random.default_rng(42)
    for n in range(1, 7):
        rule = gauss_legendre_rule(n)
        for _ in range(20):
            deg = int(rng.integers(0, 2 * n))  # exact through degree 2n-1
            c = rng.uniform(-2.0, 2.0, deg + 1)
            p = np.polynomial.Polynomial(c)
            exact = p.integ()(0.5) - p.integ()(-0.5)
            quad = float(rule.weights @ p(rule.nodes))
            assert abs(quad - exact) < 1e-13 * max(1.0, abs(exact))


def test_nodal_basis_shapes():
    for order in (1, 2, 3):
        b = nodal_basis(order)
        assert b.order == order
        assert b.nodes.shape == (order + 1,)
        assert b.weights.shape == (order + 1,)
        assert b.diff_matrix.shape == (order + 1, order + 1)
        assert b.left_trace.shape == (order + 1,)
        assert b.right_trace.shape == (order + 1,)


def test_diff_matrix_differentiates_polynomials():
    """D applied to nodal samples of p gives p' at the nodes, exactly
    for p up to the basis degree."""
    for order in (1, 2, 3, 4):
        b = nodal_basis(order)
        for k in range(order + 1):
            p = np.polynomial.Polynomial([0.0] * k + [1.0])  # x^k
            dp = p.deriv()
            err = np.abs(b.diff_matrix @ p(b.nodes) - dp(b.nodes)).max()
            assert err < 5e-13


def test_traces_interpolate_to_cell_edges():
    for order in (1, 2, 3):
        b = nodal_basis(order)
        rng = np.random.default_rng(order)
        for _ in range(10):
            c = rng.uniform(-1.0, 1.0, order + 1)
            p = np.polynomial.Polynomial(c)
            vals = p(b.nodes)
            assert abs(b.left_trace @ vals - p(-0.5)) < 1e-13
            assert abs(b.right_trace @ vals - p(0.5)) < 1e-13


def test_weights_are_positive_and_symmetric():
    for order in (1, 2, 3, 5):
        b = nodal_basis(order)
        assert (b.weights > 0).all()
        assert np.allclose(b.nodes, -b.nodes[::-1], atol=1e-15)
        assert np.allclose(b.weights, b.weights[::-1], atol=1e-15)


def test_invalid_order_rejected():
    with pytest.raises(ValueError):
        nodal_basis(-1)


def test_order_zero_degenerates_to_midpoint():
    b = nodal_basis(0)
    assert b.nodes.tolist() == [0.0]
    assert b.weights.tolist() == [1.0]
    assert b.diff_matrix.ravel().tolist() == [0.0]
