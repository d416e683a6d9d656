"""Per-cell regime selection from moment-realizability indicators.

Labels are 0 = Euler, 1 = Navier-Stokes, 2 = kinetic.  Classification is
two-phase: every predicate reads a frozen snapshot (labels, fields,
indicators), then all transitions commit at once, so the outcome cannot
depend on cell visit order.  Each cell moves along at most one promotion
path (Euler->NS->kinetic on indicator growth) and one demotion path
(toward equilibrium) per step; demotions are evaluated after promotions
and win when both fire.

In 1D the deviatoric stress and the trace-free deformation tensor vanish
identically, so the stress entry of the realizability vector is a constant
zero and only the heat-flux channel carries information.
"""

from dataclasses import dataclass

import numpy as np

from hierbgk import core
from hierbgk.basis import NodalBasis
from hierbgk.kernels import Mesh1D, cell_averages, scalar_gradient
from hierbgk.macro import Primitive, to_primitive, transport_coefficients
from hierbgk.velocity import VelocityGrid, weighted_l2_norm

EULER, NS, KINETIC = 0, 1, 2
REGIME_CHARS = "ENK"

# 1D identities: the stress sigma and the trace-free deformation D(u) are
# identically zero, see module docstring.
SIGMA_1D = 0.0
DEFORMATION_1D = 0.0

HIER_MODES = ("euler-ns-kinetic", "euler-kinetic", "ns-kinetic")


@dataclass(frozen=True)
class IndicatorDerivatives:
    """Signed per-cell representatives of T_x, u_x, u_xx (max-|.| node)."""

    t_x: np.ndarray
    u_x: np.ndarray
    u_xx: np.ndarray


@dataclass
class RegimeMap:
    labels: np.ndarray
    nu_ns: np.ndarray
    nu_b: np.ndarray
    eps_norm_g: np.ndarray
    eps_norm_ns_dist: np.ndarray
    t_x_nodes: np.ndarray | None = None

    def counts(self):
        return np.array([
            int(np.sum(self.labels == EULER)),
            int(np.sum(self.labels == NS)),
            int(np.sum(self.labels == KINETIC)),
        ])


def _representative(nodal):
    idx = np.argmax(np.abs(nodal), axis=1)
    return np.take_along_axis(nodal, idx[:, None], axis=1)[:, 0]


def compute_indicator_derivatives(U, mesh: Mesh1D, basis: NodalBasis, prim=None,
                                  with_nodal_t_x=False):
    """Per-cell T_x, u_x, u_xx representatives; T and u share one gradient pass."""
    if prim is None:
        prim = to_primitive(U)
    w = np.stack([prim.T, prim.u], axis=-1)
    d1 = scalar_gradient(w, mesh, basis)
    t_x_nodes = d1[..., 0]
    u_x_nodes = d1[..., 1]
    u_xx_nodes = scalar_gradient(np.ascontiguousarray(u_x_nodes), mesh, basis)
    der = IndicatorDerivatives(
        t_x=_representative(t_x_nodes),
        u_x=_representative(u_x_nodes),
        u_xx=_representative(u_xx_nodes),
    )
    if with_nodal_t_x:
        return der, np.ascontiguousarray(t_x_nodes)
    return der


def nu_ns(rho, T, t_x, eps):
    """Navier-Stokes realizability indicator, 1 + eps*kappa/(rho T^1.5)*|T_x|."""
    _, kappa = transport_coefficients(rho, T)
    return 1.0 + eps * kappa / (rho * T**1.5) * np.abs(t_x)


def nu_burnett(rho, T, t_x, u_x, u_xx, eps):
    """Burnett-level indicator 1 + |Bbar| (heat-flux channel, 1D)."""
    mu, kappa = transport_coefficients(rho, T)
    bbar = (
        -eps * kappa / (rho * T**1.5) * t_x
        - eps**2 * mu**2 / np.sqrt(T)
        * (25.0 / 6.0 * u_x * T - 5.0 / 3.0 * (T * u_xx + 7.0 * u_x * t_x))
    )
    return 1.0 + np.abs(bbar)


def recover_equilibrium_g(U, t_x_nodes, grid: VelocityGrid, prim=None):
    """Equilibrium closure g = -B(V) T_x/sqrt(T) M, nodal.

    Used to initialize freshly kinetic cells and as the kinetic trace a
    fluid cell shows its kinetic neighbors.
    """
    if prim is None:
        prim = to_primitive(U)
    lead = prim.rho.shape
    n = 1
    for sz in lead:
        n *= sz
    scale = (-np.asarray(t_x_nodes, float) / np.sqrt(prim.T)).reshape(n)
    out = core.active().scaled_b_maxwellian(
        np.ascontiguousarray(prim.rho.reshape(n)),
        np.ascontiguousarray(prim.u.reshape(n)),
        np.ascontiguousarray(prim.T.reshape(n)),
        np.ascontiguousarray(scale),
        grid.points,
    )
    return out.reshape(lead + (grid.n_points,))


def _cell_norm(norm_nodes, basis):
    return norm_nodes @ basis.weights


def equilibrium_g_norm(T, t_x):
    """Closed form of the weighted norm of the recovered closure.

    || -B(V) T_x/sqrt(T) M ||_M = sqrt(3/2) |T_x| / sqrt(T), since the second
    moment of B under the standard Gaussian is 3/2.  The discrete norm of
    `recover_equilibrium_g` converges to this value with the velocity grid;
    using the exact form keeps fluid cells free of velocity-space work.
    """
    return np.sqrt(1.5) * np.abs(t_x) / np.sqrt(T)


def classify(
    labels,
    U,
    g,
    mesh: Mesh1D,
    basis: NodalBasis,
    grid: VelocityGrid,
    eta0: float,
    eta1: float,
    delta0: float,
    mode: str = "euler-ns-kinetic",
) -> RegimeMap:
    """One classification pass; returns the committed new labels.

    g must hold live slices on currently kinetic cells; fluid cells are
    judged through the recovered equilibrium closure.
    """
    if mode not in HIER_MODES:
        raise ValueError(f"mode {mode!r} is not hierarchical; choices: {HIER_MODES}")
    snap = np.asarray(labels).copy()
    n = mesh.n_cells

    avg = cell_averages(U, basis)
    prim_c = to_primitive(avg)
    prim_nodes = to_primitive(U)
    der, r_nodes = compute_indicator_derivatives(
        U, mesh, basis, prim=prim_nodes, with_nodal_t_x=True
    )
    eps_c = mesh.eps_center
    nu_n = nu_ns(prim_c.rho, prim_c.T, der.t_x, eps_c)
    nu_b = nu_burnett(prim_c.rho, prim_c.T, der.t_x, der.u_x, der.u_xx, eps_c)

    # weighted norms on the snapshot, computed only where the mode's rules
    # read them: live g on kinetic cells (plus the distance to the recovered
    # closure), closed-form equilibrium norm on NS cells
    need_norm_g = mode != "ns-kinetic"
    need_dist = mode != "euler-kinetic"
    norm_g = np.zeros(n)
    norm_dist = np.zeros(n)
    is_k = snap == KINETIC
    is_n = snap == NS
    if np.any(is_k):
        idx = np.flatnonzero(is_k)
        pk = prim_nodes.rho[idx], prim_nodes.u[idx], prim_nodes.T[idx]
        live = np.ascontiguousarray(g[idx])
        if need_norm_g:
            norm_g[idx] = _cell_norm(weighted_l2_norm(live, *pk, grid), basis)
        if need_dist:
            g_rec = recover_equilibrium_g(
                U[idx], r_nodes[idx], grid,
                prim=Primitive(pk[0], pk[1], pk[2], pk[0] * pk[2]),
            )
            norm_dist[idx] = _cell_norm(weighted_l2_norm(live - g_rec, *pk, grid), basis)
    if need_norm_g and np.any(is_n):
        idx = np.flatnonzero(is_n)
        norm_g[idx] = _cell_norm(
            equilibrium_g_norm(prim_nodes.T[idx], r_nodes[idx]), basis
        )

    new = snap.copy()
    if mode == "euler-ns-kinetic":
        promote_a = (snap == EULER) & (np.abs(nu_b - 1.0) > eta0)
        new[promote_a] = NS
        cand_b = (snap == NS) | promote_a
        promote_b = cand_b & (np.abs(nu_b - nu_n) > eta1)
        new[promote_b] = KINETIC
        demote_c = (snap != EULER) & (eps_c * norm_g < delta0)
        new[demote_c] = EULER
        demote_d = (snap == KINETIC) & (new == KINETIC) & (eps_c * norm_dist < delta0)
        new[demote_d] = NS
        # smooth-extremum fix: an Euler cell flanked by NS neighbors joins NS
        left = np.roll(snap, 1)
        right = np.roll(snap, -1)
        if mesh.bc != "periodic":
            left[0] = snap[0]
            right[-1] = snap[-1]
        fix_e = (snap == EULER) & (new == EULER) & (left == NS) & (right == NS)
        new[fix_e] = NS
    elif mode == "euler-kinetic":
        promote = (snap == EULER) & (np.abs(nu_b - 1.0) > eta0)
        new[promote] = KINETIC
        demote = (snap == KINETIC) & (eps_c * norm_g < delta0)
        new[demote] = EULER
    else:  # ns-kinetic
        promote = (snap == NS) & (np.abs(nu_b - nu_n) > eta1)
        new[promote] = KINETIC
        demote = (snap == KINETIC) & (eps_c * norm_dist < delta0)
        new[demote] = NS

    return RegimeMap(new, nu_n, nu_b, eps_c * norm_g, eps_c * norm_dist, r_nodes)
