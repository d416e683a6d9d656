"""Benchmark problem construction: geometry, initial data, micro part."""

import math

import numpy as np
import pytest

from hierbgk.macro import to_primitive
from hierbgk.problems import PROBLEMS, init_problem, mixed_eps_profile
from hierbgk.velocity import discrete_moments


def test_problem_registry():
    assert PROBLEMS == ("sod", "blast", "mixed")


def test_unknown_problem_rejected():
    with pytest.raises(ValueError, match="unknown problem"):
        init_problem("vortex", 10, eps=1e-3)


def test_constant_eps_required_for_shock_tubes():
    with pytest.raises(ValueError):
        init_problem("sod", 10)
    with pytest.raises(ValueError):
        init_problem("blast", 10)


def test_mixed_eps_profile_values():
    eps = mixed_eps_profile(1e-3)
    # center of the kinetic pocket: floor + tanh(1)
    assert math.isclose(eps(0.0), 1e-3 + math.tanh(1.0), rel_tol=1e-12)
    # domain edges sit on the floor
    assert abs(eps(0.5) - 1e-3) < 1e-8
    assert abs(eps(-0.5) - 1e-3) < 1e-8
    # profile is even
    x = np.linspace(-0.5, 0.5, 101)
    assert np.allclose(eps(x), eps(-x), rtol=0.0, atol=1e-15)


def test_sod_setup_geometry_and_data():
    cfg, mesh, basis, grid, U0, g0 = init_problem("sod", 50, eps=1e-3)
    assert (cfg.x_left, cfg.x_right, cfg.bc) == (-0.2, 1.2, "outflow")
    assert cfg.t_final == 0.2
    assert cfg.v_cut == 4.5
    assert np.all(mesh.eps_node == 1e-3)

    prim = to_primitive(U0, where="sod init")
    x = mesh.x_nodes
    left, right = x < 0.5, x > 0.5
    # at even resolutions the jump lies on a cell interface, never a node
    assert left.sum() + right.sum() == x.size
    assert np.allclose(prim.rho[left], 1.0) and np.allclose(prim.T[left], 1.0)
    assert np.allclose(prim.rho[right], 0.125)
    assert np.allclose(prim.T[right], 0.8)
    assert np.all(prim.u == 0.0)
    # shock tubes start at local equilibrium
    assert g0.shape == x.shape + (100,)
    assert np.all(g0 == 0.0)


def test_blast_setup_geometry_and_data():
    cfg, mesh, basis, grid, U0, g0 = init_problem("blast", 30, eps=1e-2)
    assert (cfg.x_left, cfg.x_right, cfg.bc) == (0.0, 1.0, "reflective")
    assert cfg.t_final == 0.25
    assert cfg.v_cut == 9.0

    prim = to_primitive(U0, where="blast init")
    x = mesh.x_nodes
    lo, mid, hi = x < 0.2, (x > 0.2) & (x < 0.8), x > 0.8
    assert np.allclose(prim.rho, 1.0)
    assert np.allclose(prim.u[lo], 1.0)
    assert np.allclose(prim.u[mid], 0.0)
    assert np.allclose(prim.u[hi], -1.0)
    assert np.allclose(prim.T[lo], 2.0)
    assert np.allclose(prim.T[mid], 0.25)
    assert np.allclose(prim.T[hi], 2.0)
    assert np.all(g0 == 0.0)


def test_with_g_false_skips_micro_part():
    for name, eps in (("sod", 1e-3), ("blast", 1e-2), ("mixed", None)):
        out = init_problem(name, 10, eps=eps, with_g=False)
        assert out[5] is None


def test_v_cut_override():
    cfg, _, _, grid, _, _ = init_problem("sod", 10, eps=1e-3, v_cut=7.0)
    assert cfg.v_cut == 7.0
    assert grid.v_cut == 7.0


def test_mixed_setup_macro_state():
    cfg, mesh, basis, grid, U0, g0 = init_problem("mixed", 40, eps0=1e-3)
    assert (cfg.x_left, cfg.x_right, cfg.bc) == (-0.5, 0.5, "periodic")
    assert cfg.t_final == 0.1
    # eps on the mesh follows the tanh profile
    eps = mixed_eps_profile(1e-3)
    assert np.allclose(mesh.eps_node, eps(mesh.x_nodes), rtol=1e-14)

    prim = to_primitive(U0, where="mixed init")
    x = mesh.x_nodes
    rho_t = 1.0 + 0.875 * np.sin(2.0 * math.pi * x)
    T_t = 0.5 + 0.4 * np.sin(2.0 * math.pi * x)
    assert np.allclose(prim.rho, rho_t, rtol=1e-13)
    assert np.all(prim.u == 0.0)
    # counter-streaming pair deposits its drift energy as temperature
    assert np.allclose(prim.T, T_t + 0.75**2, rtol=1e-13)


def test_mixed_micro_part_carries_no_moments():
    _, mesh, basis, grid, U0, g0 = init_problem("mixed", 40, eps0=1e-3)
    mom = discrete_moments(g0, grid)
    scale = np.abs(U0).max()
    assert np.abs(mom).max() < 1e-8 * scale
    # but g0 itself is genuinely far from zero in the pocket
    assert np.abs(g0).max() > 1.0
