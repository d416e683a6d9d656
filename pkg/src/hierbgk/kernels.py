"""Nodal DG building blocks on a 1D mesh of Gauss-point cells.

Sign convention: `dx_assembly` is the weak approximation of d/dx(eps * w)
with a caller-chosen interface flux.  Everything else (Euler flux divergence,
micro coupling, LDG gradient, upwind transport) is that one assembly with a
different w and flux rule.  eps is sampled at Gauss nodes inside volume
terms and at the interface position inside flux terms, never averaged.
"""

from dataclasses import dataclass

import numpy as np

from hierbgk import core
from hierbgk.basis import NodalBasis
from hierbgk.macro import (
    euler_flux,
    lax_friedrichs_flux,
    max_wave_speed,
    to_primitive,
    transport_coefficients,
)
from hierbgk.velocity import VelocityGrid, project_complement

BC_KINDS = ("periodic", "outflow", "reflective")


@dataclass(frozen=True)
class Mesh1D:
    x_left: float
    x_right: float
    n_cells: int
    bc: str
    x_interfaces: np.ndarray
    widths: np.ndarray
    x_nodes: np.ndarray
    eps_node: np.ndarray
    eps_interface: np.ndarray
    eps_center: np.ndarray

    @property
    def h_max(self) -> float:
        return float(np.max(self.widths))


def build_mesh(x_left, x_right, n_cells, basis: NodalBasis, bc: str, eps) -> Mesh1D:
    """Uniform mesh with eps given as a constant or a callable of x."""
    if bc not in BC_KINDS:
        raise ValueError(f"bc must be one of {BC_KINDS}, got {bc!r}")
    if n_cells < 2:
        raise ValueError("need at least two cells")
    x_if = np.linspace(x_left, x_right, n_cells + 1)
    widths = np.diff(x_if)
    centers = 0.5 * (x_if[:-1] + x_if[1:])
    x_nodes = centers[:, None] + widths[:, None] * basis.nodes[None, :]
    if callable(eps):
        eps_node = np.asarray(eps(x_nodes), dtype=float)
        eps_if = np.asarray(eps(x_if), dtype=float)
        eps_center = np.asarray(eps(centers), dtype=float)
    else:
        eps_node = np.full_like(x_nodes, float(eps))
        eps_if = np.full_like(x_if, float(eps))
        eps_center = np.full_like(centers, float(eps))
    if np.any(eps_node < 0):
        raise ValueError("eps must be nonnegative")
    return Mesh1D(
        float(x_left), float(x_right), int(n_cells), bc,
        x_if, widths, x_nodes, eps_node, eps_if, eps_center,
    )


# ---------------------------------------------------------------------------
# traces and ghosts

def cell_averages(field, basis: NodalBasis):
    return np.einsum("k,ik...->i...", basis.weights, field)


def cell_traces(field, basis: NodalBasis):
    """Polynomial end values per cell: (left, right), each (n_cells, ...)."""
    left = np.einsum("k,ik...->i...", basis.left_trace, field)
    right = np.einsum("k,ik...->i...", basis.right_trace, field)
    return left, right


def _mirror(values, kind):
    """Exterior ghost value at a reflecting wall."""
    if kind == "conserved":
        out = values.copy()
        out[..., 1] = -out[..., 1]
        return out
    if kind == "kinetic":
        # specular wall: g_ghost(v) = g_inner(-v); the midpoint grid is
        # symmetric, so reversing the velocity axis is exact
        return values[..., ::-1]
    return values  # scalars are even across the wall


def interface_states(trace_left, trace_right, bc, kind="scalar"):
    """Left/right states at every interface, ghosts filled per the BC.

    Returns (from_left, from_right), each (n_cells + 1, ...): from_left[i]
    is the trace reaching interface i from cell i-1, from_right[i] from
    cell i.
    """
    n = trace_left.shape[0]
    shape = (n + 1,) + trace_left.shape[1:]
    from_left = np.empty(shape)
    from_right = np.empty(shape)
    from_left[1:] = trace_right
    from_right[:-1] = trace_left
    if bc == "periodic":
        from_left[0] = trace_right[-1]
        from_right[-1] = trace_left[0]
    elif bc == "outflow":
        from_left[0] = from_right[0]
        from_right[-1] = from_left[-1]
    else:  # reflective
        from_left[0] = _mirror(from_right[0], kind)
        from_right[-1] = _mirror(from_left[-1], kind)
    return from_left, from_right


# ---------------------------------------------------------------------------
# the single weak-form assembly

def dx_assembly(w_node, flux_left, flux_right, widths, basis: NodalBasis):
    """Weak d/dx: per cell c and node k,

        out[c,k] = ( -sum_k' omega_k' w_node[c,k'] D[k',k]
                     + flux_right[c] rT[k] - flux_left[c] lT[k] ) / (omega_k h_c)

    `w_node` must already carry any eps factor at the nodes; the per-cell
    interface fluxes must already carry eps at the interface.
    """
    w = np.asarray(w_node, dtype=float)
    extra = w.ndim - 2
    wv = basis.weights.reshape((1, -1) + (1,) * extra) * w
    vol = -np.einsum("ik...,kl->il...", wv, basis.diff_matrix)
    rT = basis.right_trace.reshape((1, -1) + (1,) * extra)
    lT = basis.left_trace.reshape((1, -1) + (1,) * extra)
    fr = np.asarray(flux_right)[:, None, ...]
    fl = np.asarray(flux_left)[:, None, ...]
    out = vol + fr * rT - fl * lT
    out /= basis.weights.reshape((1, -1) + (1,) * extra)
    out /= np.asarray(widths).reshape((-1, 1) + (1,) * extra)
    return out


# ---------------------------------------------------------------------------
# macroscopic operators

def euler_weak_rhs(U, mesh: Mesh1D, basis: NodalBasis, lam=None):
    """Nodal dU/dt from the Euler flux with a global Lax-Friedrichs flux."""
    if lam is None:
        lam = max_wave_speed(U)
    F = euler_flux(U)
    tl, tr = cell_traces(U, basis)
    UL, UR = interface_states(tl, tr, mesh.bc, kind="conserved")
    Fhat = lax_friedrichs_flux(UL, UR, lam)
    return -dx_assembly(F, Fhat[:-1], Fhat[1:], mesh.widths, basis)


def scalar_gradient(w, mesh: Mesh1D, basis: NodalBasis):
    """Central-flux DG derivative of a nodal scalar field (eps-free)."""
    tl, tr = cell_traces(w, basis)
    wl, wr = interface_states(tl, tr, mesh.bc, kind="scalar")
    what = 0.5 * (wl + wr)
    return dx_assembly(w, what[:-1], what[1:], mesh.widths, basis)


def central_dg_derivative(w, mesh: Mesh1D, basis: NodalBasis, order: int = 1):
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    d = scalar_gradient(w, mesh, basis)
    return scalar_gradient(d, mesh, basis) if order == 2 else d


def temperature_gradient(U, mesh: Mesh1D, basis: NodalBasis, prim=None):
    """r_h, the LDG approximation of dT/dx from the conserved field."""
    if prim is None:
        prim = to_primitive(U)
    return scalar_gradient(prim.T, mesh, basis)


def viscous_energy_rhs(U, r, mesh: Mesh1D, basis: NodalBasis, prim=None):
    """Energy-equation contribution of d/dx(eps * kappa * r), central flux."""
    if prim is None:
        prim = to_primitive(U)
    _, kappa = transport_coefficients(prim.rho, prim.T)
    w = kappa * r
    tl, tr = cell_traces(w, basis)
    wl, wr = interface_states(tl, tr, mesh.bc, kind="scalar")
    what = 0.5 * (wl + wr)
    return dx_assembly(
        mesh.eps_node * w,
        mesh.eps_interface[:-1] * what[:-1],
        mesh.eps_interface[1:] * what[1:],
        mesh.widths, basis,
    )


def fluid_rhs(U, mesh: Mesh1D, basis: NodalBasis, lam=None, prim=None,
              r=None, want_viscous=False, want_tgrad=False):
    """Convective dU/dt with optional riders on the same weak assembly.

    Returns (rhs, vis, r_out):
      - rhs: the Euler part for every cell; alone, byte-for-byte the
        `euler_weak_rhs` path.
      - vis (want_viscous, needs r): nodal d/dx(eps kappa r) energy
        contribution; the caller decides which cells receive it.
      - r_out (want_tgrad, excludes want_viscous): the LDG temperature
        gradient, bitwise equal to `temperature_gradient` thanks to the
        exactness of IEEE negation.
    """
    if lam is None:
        lam = max_wave_speed(U, prim=prim)
    F = euler_flux(U)
    tl, tr = cell_traces(U, basis)
    UL, UR = interface_states(tl, tr, mesh.bc, kind="conserved")
    Fhat = lax_friedrichs_flux(UL, UR, lam)
    if not (want_viscous or want_tgrad):
        return -dx_assembly(F, Fhat[:-1], Fhat[1:], mesh.widths, basis), None, None
    if prim is None:
        prim = to_primitive(U)
    if want_viscous:
        # volume carries eps at the nodes, the central flux at the interfaces
        _, kappa = transport_coefficients(prim.rho, prim.T)
        ke = kappa * r
        w = -mesh.eps_node * ke
        ktl, ktr = cell_traces(ke, basis)
        kl, kr = interface_states(ktl, ktr, mesh.bc, kind="scalar")
        what = -mesh.eps_interface * (0.5 * (kl + kr))
    else:
        w = -prim.T
        wtl, wtr = cell_traces(w, basis)
        wl, wr = interface_states(wtl, wtr, mesh.bc, kind="scalar")
        what = 0.5 * (wl + wr)
    w_cat = np.concatenate([F, w[..., None]], axis=-1)
    fl_cat = np.concatenate([Fhat[:-1], what[:-1, None]], axis=-1)
    fr_cat = np.concatenate([Fhat[1:], what[1:, None]], axis=-1)
    out = -dx_assembly(w_cat, fl_cat, fr_cat, mesh.widths, basis)
    rhs = np.ascontiguousarray(out[..., :3])
    if want_viscous:
        return rhs, out[..., 3], None
    return rhs, None, out[..., 3]


# ---------------------------------------------------------------------------
# kinetic operators (full-domain forms; the solver has subset variants)

def g_interface_states(g, mesh: Mesh1D, basis: NodalBasis):
    tl, tr = cell_traces(g, basis)
    return interface_states(tl, tr, mesh.bc, kind="kinetic")


def micro_coupling_rhs(g, mesh: Mesh1D, basis: NodalBasis, grid: VelocityGrid):
    """Moment-flux divergence -d/dx(eps <v m g>) felt by the U equation."""
    backend = core.active()
    n, nk = g.shape[0], g.shape[1]
    mom = backend.flux_moments(
        np.ascontiguousarray(g.reshape(n * nk, grid.n_points)), grid.points, grid.dv
    ).reshape(n, nk, 3)
    gl, gr = g_interface_states(g, mesh, basis)
    ghat = np.ascontiguousarray(0.5 * (gl + gr))
    mhat = backend.flux_moments(ghat, grid.points, grid.dv)
    return -dx_assembly(
        mesh.eps_node[:, :, None] * mom,
        mesh.eps_interface[:-1, None] * mhat[:-1],
        mesh.eps_interface[1:, None] * mhat[1:],
        mesh.widths, basis,
    )


def upwind_vg_flux(gl, gr, v):
    """v * (left trace where v > 0, right trace otherwise)."""
    return v[None, :] * np.where(v[None, :] > 0.0, gl, gr)


def transport_rhs(g, U, mesh: Mesh1D, basis: NodalBasis, grid: VelocityGrid):
    """(I - Pi) applied to the upwind divergence of eps * v * g.

    The g equation subtracts this term; the projection state is the
    Maxwellian of U at each node.
    """
    gl, gr = g_interface_states(g, mesh, basis)
    vflux = upwind_vg_flux(gl, gr, grid.points)
    pre = dx_assembly(
        mesh.eps_node[:, :, None] * grid.points[None, None, :] * g,
        mesh.eps_interface[:-1, None] * vflux[:-1],
        mesh.eps_interface[1:, None] * vflux[1:],
        mesh.widths, basis,
    )
    prim = to_primitive(U)
    return project_complement(pre, prim.rho, prim.u, prim.T, grid)


def relaxation_sources(g, U, r, grid: VelocityGrid):
    """(s1, s2) of the stiff relaxation: s1 = -g, s2 = -B(V) r/sqrt(T) M.

    At eps = 0 the implicit stage solve lands on g = s2, which is exactly
    the Navier-Stokes correction; that fixed point pins the sign of s2.
    """
    prim = to_primitive(U)
    lead = g.shape[:-1]
    n = int(np.prod(lead))
    scale = (-np.asarray(r, float) / np.sqrt(prim.T)).reshape(n)
    s2 = core.active().scaled_b_maxwellian(
        np.ascontiguousarray(prim.rho.reshape(n)),
        np.ascontiguousarray(prim.u.reshape(n)),
        np.ascontiguousarray(prim.T.reshape(n)),
        np.ascontiguousarray(scale),
        grid.points,
    ).reshape(lead + (grid.n_points,))
    return -g, s2


# ---------------------------------------------------------------------------
# TVB limiter

def _tvb_minmod(a, fwd, bwd, thresh):
    """a where |a| <= thresh, else minmod(a, fwd, bwd)."""
    sa = np.sign(a)
    agree = (sa == np.sign(fwd)) & (sa == np.sign(bwd))
    mm = np.where(agree, sa * np.minimum(np.abs(a), np.minimum(np.abs(fwd), np.abs(bwd))), 0.0)
    return np.where(np.abs(a) <= thresh, a, mm)


def tvb_limit(U, mesh: Mesh1D, basis: NodalBasis, m_tvb, kind="conserved"):
    """Component-wise TVB slope limiter; cell averages are untouched.

    Cells whose end-point deviations pass the minmod test keep their full
    polynomial; flagged cells are rebuilt as average plus the limited slope
    of their linear L2 part.  m_tvb=None disables limiting.
    """
    if m_tvb is None:
        return U
    U = np.asarray(U, dtype=float)
    avg = cell_averages(U, basis)
    tl, tr = cell_traces(U, basis)
    dev_r = tr - avg
    dev_l = avg - tl

    ghost_l = np.empty_like(avg[:1])
    ghost_r = np.empty_like(avg[:1])
    if mesh.bc == "periodic":
        ghost_l[0] = avg[-1]
        ghost_r[0] = avg[0]
    elif mesh.bc == "outflow":
        ghost_l[0] = avg[0]
        ghost_r[0] = avg[-1]
    else:
        ghost_l[0] = _mirror(avg[0], kind)
        ghost_r[0] = _mirror(avg[-1], kind)
    avg_ext = np.concatenate([ghost_l, avg, ghost_r], axis=0)
    bwd = avg - avg_ext[:-2]
    fwd = avg_ext[2:] - avg

    extra = (1,) * (U.ndim - 2)
    thresh = (m_tvb * mesh.widths**2).reshape((-1,) + extra)
    lim_r = _tvb_minmod(dev_r, fwd, bwd, thresh)
    lim_l = _tvb_minmod(dev_l, fwd, bwd, thresh)
    need = (lim_r != dev_r) | (lim_l != dev_l)
    if not np.any(need):
        return U

    # linear L2 part on the reference element: slope = 12 * int(x u dx)
    s_lin = 12.0 * np.einsum("k,ik...->i...", basis.weights * basis.nodes, U)
    dev_lin = _tvb_minmod(0.5 * s_lin, fwd, bwd, thresh)
    rebuilt = avg[:, None, ...] + 2.0 * dev_lin[:, None, ...] * basis.nodes.reshape((1, -1) + extra)
    return np.where(need[:, None, ...], rebuilt, U)
