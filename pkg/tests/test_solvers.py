import numpy as np
import pytest

from hierbgk.basis import nodal_basis
from hierbgk.imex import ars443
from hierbgk.kernels import build_mesh, cell_averages
from hierbgk.macro import NonPhysicalStateError, from_primitive
from hierbgk.problems import init_problem
from hierbgk.regime import EULER, KINETIC, NS
from hierbgk.solvers import (
    StepOptions,
    advance_step,
    cfl_dt,
    euler_rk_step,
    implicit_g_stage_solve,
    kinetic_imex_step,
    ns_ldg_step,
)

BASIS = nodal_basis(2)
TAB = ars443()


def test_cfl_dt_uses_velocity_cut_as_floor():
    mesh = build_mesh(0.0, 1.0, 10, BASIS, "periodic", 0.0)
    U = from_primitive(
        np.full((10, 3), 1.0), np.full((10, 3), 0.0), np.full((10, 3), 1.0)
    )
    lam = np.sqrt(3.0)  # |u| + sqrt(3T)
    dt_fast = cfl_dt(U, mesh, 9.0, 0.05)
    dt_slow = cfl_dt(U, mesh, 0.0, 0.05)
    assert abs(dt_fast - 0.05 * 0.1 / 9.0) < 1e-15
    assert abs(dt_slow - 0.05 * 0.1 / lam) < 1e-15


def test_implicit_stage_solve_closed_form():
    rng = np.random.default_rng(21)
    acc = rng.standard_normal((4, 3, 8))
    eps = rng.uniform(1e-6, 1.0, (4, 3, 1))  # broadcasts over velocities
    s2 = rng.standard_normal((4, 3, 8))
    a_ll, dt = 0.5, 2e-3
    g = implicit_g_stage_solve(acc, eps, a_ll, dt, s2)
    ref = (acc + dt * a_ll * s2) / (eps + dt * a_ll)
    assert np.abs(g - ref).max() < 1e-14
    # eps = 0 pins the stage onto the source
    g0 = implicit_g_stage_solve(np.zeros_like(acc), np.zeros_like(eps), a_ll, dt, s2)
    assert np.abs(g0 - s2).max() < 1e-13


def test_zero_knudsen_kinetic_step_is_euler_bitwise():
    """At eps = 0 the kinetic IMEX update collapses onto the explicit
    RK-DG Euler update with no floating-point residue at all."""
    setup, mesh, basis, grid, U, g = init_problem(
        "sod", 20, 2, 16, eps=0.0, v_cut=4.5, with_g=True
    )
    U_e = U.copy()
    U_k = U.copy()
    g_k = g.copy()
    for _ in range(12):
        dt = cfl_dt(U_e, mesh, grid.v_cut, 0.05)
        U_e = euler_rk_step(U_e, mesh, basis, TAB, dt)
        U_k, g_k = kinetic_imex_step(U_k, g_k, mesh, basis, grid, TAB, dt)
        assert np.array_equal(U_e, U_k)


def test_mixed_euler_kinetic_labels_match_euler_at_zero_knudsen():
    # interface bookkeeping between regime groups must not perturb the
    # fluid update when the coupling term carries eps = 0
    setup, mesh, basis, grid, U, g = init_problem(
        "sod", 20, 2, 16, eps=0.0, v_cut=4.5, with_g=True
    )
    labels = np.full(20, EULER, np.int8)
    labels[7:13] = KINETIC
    U_e = U.copy()
    U_m = U.copy()
    g_m = g.copy()
    opts = StepOptions()
    for _ in range(10):
        dt = cfl_dt(U_e, mesh, grid.v_cut, 0.05)
        U_e = euler_rk_step(U_e, mesh, basis, TAB, dt)
        U_m, g_m = advance_step(U_m, g_m, labels, mesh, basis, grid, TAB, dt, opts)
        assert np.array_equal(U_e, U_m)


def test_advance_step_conserves_on_periodic_mesh():
    setup, mesh, basis, grid, U, g = init_problem("mixed", 16, 2, 40, eps0=1e-2)
    labels = np.full(16, KINETIC, np.int8)
    totals0 = (cell_averages(U, basis) * mesh.widths[:, None]).sum(axis=0)
    dt = cfl_dt(U, mesh, grid.v_cut, 0.05)
    for _ in range(5):
        U, g = advance_step(U, g, labels, mesh, basis, grid, TAB, dt, StepOptions())
    totals1 = (cell_averages(U, basis) * mesh.widths[:, None]).sum(axis=0)
    drift = np.abs(totals1 - totals0)
    assert drift[0] < 1e-13 * abs(totals0[0])
    assert drift[1] < 1e-12
    assert drift[2] < 1e-12 * abs(totals0[2])


def test_three_regime_split_runs_and_conserves():
    setup, mesh, basis, grid, U, g = init_problem("mixed", 18, 2, 40, eps0=1e-2)
    labels = np.full(18, NS, np.int8)
    labels[5:9] = KINETIC
    labels[12:15] = EULER
    totals0 = (cell_averages(U, basis) * mesh.widths[:, None]).sum(axis=0)
    dt = cfl_dt(U, mesh, grid.v_cut, 0.05)
    for _ in range(4):
        U, g = advance_step(U, g, labels, mesh, basis, grid, TAB, dt, StepOptions())
    totals1 = (cell_averages(U, basis) * mesh.widths[:, None]).sum(axis=0)
    # regime interfaces exchange single-valued fluxes, so mass stays exact
    assert abs(totals1[0] - totals0[0]) < 1e-13 * abs(totals0[0])
    assert np.isfinite(U).all()
    assert np.isfinite(g).all()


def test_pure_fluid_steps_need_no_velocity_grid():
    setup, mesh, basis, grid, U, _ = init_problem(
        "sod", 16, 2, 16, eps=1e-3, with_g=False
    )
    dt = cfl_dt(U, mesh, grid.v_cut, 0.05)
    U1 = euler_rk_step(U, mesh, basis, TAB, dt)
    U2 = ns_ldg_step(U, mesh, basis, TAB, dt)
    assert np.isfinite(U1).all()
    assert np.isfinite(U2).all()
    assert not np.array_equal(U1, U2)  # viscous flux actually does something


def test_ns_step_reduces_to_euler_when_eps_vanishes():
    setup, mesh, basis, grid, U, _ = init_problem(
        "sod", 16, 2, 16, eps=0.0, with_g=False
    )
    dt = cfl_dt(U, mesh, grid.v_cut, 0.05)
    assert np.array_equal(
        euler_rk_step(U, mesh, basis, TAB, dt), ns_ldg_step(U, mesh, basis, TAB, dt)
    )


def test_unstable_step_raises_with_stage_context():
    setup, mesh, basis, grid, U, g = init_problem(
        "sod", 16, 2, 16, eps=1e-3, with_g=True
    )
    labels = np.full(16, KINETIC, np.int8)
    huge_dt = 5.0  # far beyond any CFL bound
    with pytest.raises(NonPhysicalStateError, match="stage"):
        for _ in range(50):
            U, g = advance_step(U, g, labels, mesh, basis, grid, TAB, huge_dt, StepOptions())


def test_limiter_options_change_the_update():
    setup, mesh, basis, grid, U, _ = init_problem(
        "sod", 20, 2, 16, eps=1e-3, with_g=False
    )
    dt = cfl_dt(U, mesh, grid.v_cut, 0.05)
    lim = euler_rk_step(U, mesh, basis, TAB, dt, m_tvb=0.0)
    free = euler_rk_step(U, mesh, basis, TAB, dt, m_tvb=None)
    assert not np.array_equal(lim, free)
