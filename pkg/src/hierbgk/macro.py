"""Macroscopic state algebra for the 1D gas (gamma = 3).

Conserved vectors live on the last axis as U = (rho, rho*u, E) with
E = rho*u^2/2 + rho*T/2 and p = rho*T; the adiabatic index (d+2)/d = 3
follows from the single translational degree of freedom.
"""

from typing import NamedTuple

import numpy as np

from hierbgk import core

GAMMA = 3.0


class NonPhysicalStateError(ValueError):
    """Raised when a conserved state has rho <= 0 or T <= 0."""


class Primitive(NamedTuple):
    rho: np.ndarray
    u: np.ndarray
    T: np.ndarray
    p: np.ndarray


def to_primitive(U, where="") -> Primitive:
    U = np.asarray(U, dtype=float)
    rho = U[..., 0]
    # cheap guards on the hot path; detailed index lookup only when raising
    if not np.isfinite(np.sum(U)):
        idx = np.argwhere(~np.isfinite(U).all(axis=-1))[0]
        raise NonPhysicalStateError(f"non-finite state at index {tuple(idx)} {where}".strip())
    if not (rho.min() > 0 if rho.size else True):
        idx = np.argwhere(~(rho > 0))[0]
        raise NonPhysicalStateError(f"rho <= 0 at index {tuple(idx)} {where}".strip())
    u = U[..., 1] / rho
    T = (2.0 * U[..., 2] - rho * u * u) / rho
    if not (T.min() > 0 if T.size else True):
        idx = np.argwhere(~(T > 0))[0]
        raise NonPhysicalStateError(f"T <= 0 at index {tuple(idx)} {where}".strip())
    return Primitive(rho, u, T, rho * T)


def from_primitive(rho, u, T):
    rho, u, T = np.broadcast_arrays(
        np.asarray(rho, float), np.asarray(u, float), np.asarray(T, float)
    )
    U = np.empty(rho.shape + (3,))
    U[..., 0] = rho
    U[..., 1] = rho * u
    U[..., 2] = 0.5 * rho * (u * u + T)
    return U


def euler_flux(U):
    """F(U) = (rho u, rho u^2 + p, (E + p) u).

    Written in the rational form p = 2E - m^2/rho so interface traces that
    momentarily leave the physical cone (a limited polynomial can combine
    per-component slopes that way) still produce finite fluxes for the
    dissipative interface flux to damp; rho u^2 + p collapses to exactly 2E.
    """
    U = np.asarray(U, dtype=float)
    m = U[..., 1]
    u = m / U[..., 0]
    F = np.empty_like(U)
    F[..., 0] = m
    F[..., 1] = 2.0 * U[..., 2]
    F[..., 2] = (3.0 * U[..., 2] - m * u) * u
    return F


def max_wave_speed(U, prim: "Primitive | None" = None) -> float:
    """max |u| + sqrt(gamma T) over all states; the global LF constant."""
    if prim is None:
        prim = to_primitive(U)
    return float(np.max(np.abs(prim.u) + np.sqrt(GAMMA * prim.T)))


def lax_friedrichs_flux(UL, UR, lam):
    """Global Lax-Friedrichs flux (F(UL) + F(UR) - lam (UR - UL)) / 2."""
    return 0.5 * (euler_flux(UL) + euler_flux(UR) - lam * (np.asarray(UR) - np.asarray(UL)))


def b_function(V):
    """B(V) = (V^2 - 3) V / 2, the temperature-gradient mode of the Maxwellian."""
    V = np.asarray(V, dtype=float)
    return 0.5 * (V * V - 3.0) * V


def transport_coefficients(rho, T):
    """(mu, kappa) = (rho T, 3 rho T / 2).

    In 1D the deviatoric stress vanishes identically, so mu never enters the
    fluid closure; it is kept as the scale the Burnett indicator expects.
    """
    rho = np.asarray(rho, dtype=float)
    T = np.asarray(T, dtype=float)
    return rho * T, 1.5 * rho * T


def heat_flux_fluid(rho, T, T_x, eps):
    """Fourier closure q = eps * (3/2) rho T * T_x."""
    return np.asarray(eps, float) * 1.5 * np.asarray(rho, float) * np.asarray(T, float) * np.asarray(T_x, float)


def heat_flux_kinetic(g, u, grid, eps):
    """Kinetic heat flux q = eps * dv * sum_j (u - v_j)^3 g_j / 2.

    Sign convention matches `heat_flux_fluid`: when g sits on the
    Navier-Stokes correction -B(V) T_x/sqrt(T) M the two closures agree, so
    frames show one continuous q curve across regime boundaries.
    """
    g = np.ascontiguousarray(g, dtype=float)
    lead = g.shape[:-1]
    n = max(1, int(np.prod(lead)))
    gb = g.reshape(n, grid.n_points)
    ub = np.broadcast_to(np.asarray(u, float), lead).reshape(n)
    if not ub.flags.c_contiguous or not ub.flags.writeable:
        ub = ub.copy()
    out = -np.asarray(eps, float) * core.active().third_central_moment(
        gb, ub, grid.points, grid.dv
    ).reshape(lead)
    return out if lead else float(out)
