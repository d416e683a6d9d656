"""Benchmark problem setups.

Each setup returns the mesh/basis/velocity grid plus pointwise nodal initial
data (U at the Gauss nodes, and the micro part g where the run carries one).
Discontinuous data is sampled as-is; the nodes never sit on the jump for the
resolutions used here.
"""

import math
from dataclasses import dataclass

import numpy as np

from hierbgk.basis import NodalBasis, nodal_basis
from hierbgk.kernels import Mesh1D, build_mesh
from hierbgk.macro import GAMMA, from_primitive
from hierbgk.velocity import VelocityGrid, maxwellian_eval, velocity_grid

PROBLEMS = ("sod", "blast", "mixed")


@dataclass(frozen=True)
class ProblemSetup:
    name: str
    x_left: float
    x_right: float
    bc: str
    t_final: float
    v_cut: float
    eps_label: str


def _piecewise(x, edges, values):
    """values[i] on (edges[i-1], edges[i]); len(values) = len(edges)+1."""
    out = np.full(x.shape, values[-1], dtype=float)
    prev = -np.inf
    for e, val in zip(edges, values):
        out[(x > prev) & (x <= e)] = val
        prev = e
    return out


def mixed_eps_profile(eps0: float):
    def eps(x):
        return eps0 + 0.5 * (np.tanh(1.0 - 40.0 * x) + np.tanh(1.0 + 40.0 * x))

    return eps


def init_problem(
    name: str,
    n_cells: int,
    order: int = 2,
    n_v: int = 100,
    eps: float | None = None,
    v_cut: float | None = None,
    eps0: float = 1e-3,
    with_g: bool = True,
):
    """Build (cfg, mesh, basis, grid, U0, g0) for a named benchmark.

    `eps` is the constant Knudsen number for sod/blast (required there);
    the mixed problem uses its built-in tanh profile with floor `eps0`.
    g0 is None when with_g is False (pure fluid runs).
    """
    if name not in PROBLEMS:
        raise ValueError(f"unknown problem {name!r}, expected one of {PROBLEMS}")
    basis = nodal_basis(order)

    if name == "sod":
        if eps is None:
            raise ValueError("sod needs a constant eps")
        cfg = ProblemSetup("sod", -0.2, 1.2, "outflow", 0.2,
                            4.5 if v_cut is None else v_cut, f"{eps:g}")
        mesh = build_mesh(cfg.x_left, cfg.x_right, n_cells, basis, cfg.bc, eps)
        grid = velocity_grid(cfg.v_cut, n_v)
        x = mesh.x_nodes
        rho = _piecewise(x, [0.5], [1.0, 0.125])
        u = np.zeros_like(x)
        T = _piecewise(x, [0.5], [1.0, 0.8])
        U0 = from_primitive(rho, u, T)
        g0 = np.zeros(x.shape + (n_v,)) if with_g else None
        return cfg, mesh, basis, grid, U0, g0

    if name == "blast":
        if eps is None:
            raise ValueError("blast needs a constant eps")
        cfg = ProblemSetup("blast", 0.0, 1.0, "reflective", 0.25,
                            9.0 if v_cut is None else v_cut, f"{eps:g}")
        mesh = build_mesh(cfg.x_left, cfg.x_right, n_cells, basis, cfg.bc, eps)
        grid = velocity_grid(cfg.v_cut, n_v)
        x = mesh.x_nodes
        rho = np.ones_like(x)
        u = _piecewise(x, [0.2, 0.8], [1.0, 0.0, -1.0])
        T = _piecewise(x, [0.2, 0.8], [2.0, 0.25, 2.0])
        U0 = from_primitive(rho, u, T)
        g0 = np.zeros(x.shape + (n_v,)) if with_g else None
        return cfg, mesh, basis, grid, U0, g0

    # mixed: smooth far-from-equilibrium start in a kinetic pocket
    eps_fn = mixed_eps_profile(eps0)
    cfg = ProblemSetup("mixed", -0.5, 0.5, "periodic", 0.1,
                        10.0 if v_cut is None else v_cut,
                        f"tanh(eps0={eps0:g})")
    mesh = build_mesh(cfg.x_left, cfg.x_right, n_cells, basis, cfg.bc, eps_fn)
    grid = velocity_grid(cfg.v_cut, n_v)
    x = mesh.x_nodes
    rho_t = 1.0 + 0.875 * np.sin(2.0 * math.pi * x)
    T_t = 0.5 + 0.4 * np.sin(2.0 * math.pi * x)
    u_t = 0.75
    rho0 = rho_t
    u0 = np.zeros_like(x)
    T0 = T_t + u_t * u_t
    U0 = from_primitive(rho0, u0, T0)
    g0 = None
    if with_g:
        # counter-streaming Maxwellian pair; net drift is zero but the
        # state starts far from the single local Maxwellian of U0
        f0 = 0.5 * (
            maxwellian_eval(rho_t, np.full_like(x, u_t), T_t, grid)
            + maxwellian_eval(rho_t, np.full_like(x, -u_t), T_t, grid)
        )
        M0 = maxwellian_eval(rho0, u0, T0, grid)
        g0 = (f0 - M0) / mesh.eps_node[..., None]
    return cfg, mesh, basis, grid, U0, g0
