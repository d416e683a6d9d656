"""Time steppers.

One unified stage loop advances all regimes synchronously under the shared
double Butcher tableau: every cell gets the explicit Euler-flux update,
Navier-Stokes cells add the viscous LDG closure, kinetic cells carry the
micro unknown g through the stiff IMEX path.  The kinetic work runs on the
kinetic cell subset only; at regime interfaces the fluid side shows its
neighbors the recovered equilibrium g, so the kinetic assembly never reads
a stale slice.

The pure-mode steppers (`euler_rk_step`, `ns_ldg_step`, `kinetic_imex_step`)
are the same loop with a uniform label array.
"""

import time
from dataclasses import dataclass

import numpy as np

from hierbgk import core
from hierbgk.basis import NodalBasis
from hierbgk.imex import DoubleButcherTableau, validate
from hierbgk.kernels import (
    Mesh1D,
    dx_assembly,
    fluid_rhs,
    temperature_gradient,
    tvb_limit,
    upwind_vg_flux,
)
from hierbgk.macro import Primitive, max_wave_speed, to_primitive
from hierbgk.regime import EULER, KINETIC, NS, recover_equilibrium_g
from hierbgk.velocity import VelocityGrid, project_complement


def cfl_dt(U, mesh: Mesh1D, v_cut: float, cfl: float) -> float:
    """dt = cfl * h / max(Lambda, v_cut); v_cut = 0 for pure-fluid runs."""
    return cfl * mesh.h_max / max(max_wave_speed(U), v_cut)


def _prim_take(prim: Primitive, idx) -> Primitive:
    return Primitive(prim.rho[idx], prim.u[idx], prim.T[idx], prim.p[idx])


_validated_tableaus = {}


def implicit_g_stage_solve(accumulated, eps_node, a_ll, dt, s2):
    """Pointwise stiff stage solve g = (acc + dt a_ll s2) / (eps + dt a_ll).

    `accumulated` is the eps*g right-hand side gathered from earlier stages
    (it already contains eps*g^n); s2 is the equilibrium source at this
    stage.  Well defined at eps = 0 whenever a_ll > 0.
    """
    if a_ll == 0.0:
        if np.any(eps_node == 0.0):
            raise ValueError("a_ll = 0 needs eps > 0 everywhere (only stage 1 may be explicit)")
        return accumulated / eps_node
    return (accumulated + (dt * a_ll) * s2) / (eps_node + dt * a_ll)


@dataclass
class StepOptions:
    """Limiter policy knobs shared by all steppers.

    Every cell is limited after every stage by default, so a run with
    eps = 0 reduces to the pure fluid solver bitwise, limiter included.
    Clearing a flag moves that class of cells to end-of-step limiting only.
    m_tvb=None turns the limiter off entirely.
    """

    m_tvb: float | None = 1.0
    limit_stages: bool = True
    limit_kinetic_stages: bool = True


class SolverWorkspace:
    """Scratch buffers reused across steps (sized on first use)."""

    def __init__(self):
        self._store = {}

    def take(self, name, shape):
        buf = self._store.get(name)
        if buf is None or buf.shape != shape:
            buf = np.empty(shape)
            self._store[name] = buf
        return buf


class _KineticPatch:
    """Per-step index maps for the kinetic subset (labels frozen in a step)."""

    def __init__(self, labels, mesh: Mesh1D):
        n = mesh.n_cells
        self.mesh = mesh
        self.kin = np.flatnonzero(labels == KINETIC)
        touch = np.zeros(n + 1, dtype=bool)
        touch[self.kin] = True
        touch[self.kin + 1] = True
        self.ifaces = np.flatnonzero(touch)
        pos = np.full(n + 1, -1)
        pos[self.ifaces] = np.arange(len(self.ifaces))
        self.pos_left = pos[self.kin]
        self.pos_right = pos[self.kin + 1]

        lc = self.ifaces - 1
        rc = self.ifaces.copy()
        if mesh.bc == "periodic":
            lc[lc < 0] = n - 1
            rc[rc > n - 1] = 0
            self.ghost_left = self.ghost_right = np.zeros(0, dtype=int)
        else:
            self.ghost_left = np.flatnonzero(lc < 0)
            self.ghost_right = np.flatnonzero(rc > n - 1)
            lc[lc < 0] = 0
            rc[rc > n - 1] = n - 1
        self.left_cell = lc
        self.right_cell = rc

        is_kin = np.zeros(n, dtype=bool)
        is_kin[self.kin] = True
        providers = np.unique(np.concatenate([lc, rc]))
        self.border = providers[~is_kin[providers]]

        self.eps_node = mesh.eps_node[self.kin][:, :, None]
        self.eps_if = mesh.eps_interface[self.ifaces]
        self.widths = mesh.widths[self.kin]

    def iface_traces(self, g_sub, g_border, basis: NodalBasis, n_v: int):
        """Both-side g traces at every kinetic-adjacent interface."""
        n = self.mesh.n_cells
        gtl = np.zeros((n, n_v))
        gtr = np.zeros((n, n_v))
        gtl[self.kin] = np.einsum("k,ckv->cv", basis.left_trace, g_sub)
        gtr[self.kin] = np.einsum("k,ckv->cv", basis.right_trace, g_sub)
        if self.border.size:
            gtl[self.border] = np.einsum("k,ckv->cv", basis.left_trace, g_border)
            gtr[self.border] = np.einsum("k,ckv->cv", basis.right_trace, g_border)
        from_left = gtr[self.left_cell]
        from_right = gtl[self.right_cell]
        if self.ghost_left.size:
            if self.mesh.bc == "outflow":
                from_left[self.ghost_left] = from_right[self.ghost_left]
            else:
                from_left[self.ghost_left] = from_right[self.ghost_left][:, ::-1]
        if self.ghost_right.size:
            if self.mesh.bc == "outflow":
                from_right[self.ghost_right] = from_left[self.ghost_right]
            else:
                from_right[self.ghost_right] = from_left[self.ghost_right][:, ::-1]
        return from_left, from_right

    def micro_rhs(self, g_sub, from_left, from_right, basis: NodalBasis, grid: VelocityGrid):
        """-d/dx(eps <v m g>) on the kinetic cells, central moment flux."""
        backend = core.active()
        nk, nn = g_sub.shape[0], g_sub.shape[1]
        mom = backend.flux_moments(
            g_sub.reshape(nk * nn, grid.n_points), grid.points, grid.dv
        ).reshape(nk, nn, 3)
        mhat = backend.flux_moments(
            np.ascontiguousarray(0.5 * (from_left + from_right)), grid.points, grid.dv
        )
        flux = self.eps_if[:, None] * mhat
        return -dx_assembly(
            self.eps_node * mom,
            flux[self.pos_left], flux[self.pos_right],
            self.widths, basis,
        )

    def transport_rhs(self, g_sub, prim, from_left, from_right, basis: NodalBasis, grid: VelocityGrid):
        """(I - Pi) D(eps v g) on the kinetic cells, upwind flux."""
        vflux = self.eps_if[:, None] * upwind_vg_flux(from_left, from_right, grid.points)
        pre = dx_assembly(
            self.eps_node * grid.points[None, None, :] * g_sub,
            vflux[self.pos_left], vflux[self.pos_right],
            self.widths, basis,
        )
        kin = self.kin
        return project_complement(pre, prim.rho[kin], prim.u[kin], prim.T[kin], grid)

    def kinetic_rhs(self, g_sub, prim_kin, from_left, from_right, basis: NodalBasis, grid: VelocityGrid):
        """micro_rhs and transport_rhs off one stacked assembly.

        The moment columns and the velocity columns share eps factors, cell
        widths and the weak operator, so both divergences ride a single
        dx_assembly; column-wise the results match the two separate methods.
        """
        backend = core.active()
        nk, nn = g_sub.shape[0], g_sub.shape[1]
        mom = backend.flux_moments(
            g_sub.reshape(nk * nn, grid.n_points), grid.points, grid.dv
        ).reshape(nk, nn, 3)
        mhat = backend.flux_moments(
            np.ascontiguousarray(0.5 * (from_left + from_right)), grid.points, grid.dv
        )
        w_cat = np.concatenate(
            [-mom, grid.points[None, None, :] * g_sub], axis=-1
        )
        w_cat *= self.eps_node
        f_cat = np.concatenate(
            [-mhat, upwind_vg_flux(from_left, from_right, grid.points)], axis=-1
        )
        f_cat *= self.eps_if[:, None]
        out = dx_assembly(
            w_cat, f_cat[self.pos_left], f_cat[self.pos_right], self.widths, basis
        )
        micro = out[..., :3]
        trans = project_complement(
            out[..., 3:], prim_kin.rho, prim_kin.u, prim_kin.T, grid
        )
        return micro, trans


def advance_step(
    U,
    g,
    labels,
    mesh: Mesh1D,
    basis: NodalBasis,
    grid,
    tab: DoubleButcherTableau,
    dt: float,
    opts: StepOptions | None = None,
    timers=None,
):
    """One synchronous time step for a frozen label array.

    Returns (U_new, g_new); g_new is a copy of g updated on kinetic cells
    (or None when there are none and g is None).
    """
    opts = opts or StepOptions()
    if id(tab) not in _validated_tableaus:
        err = validate(tab)
        if err is not None:
            raise ValueError(f"unusable tableau: {err}")
        if tab.a_im[0, 0] != 0.0:
            raise ValueError("solver requires an explicit first stage (a_im[0,0] = 0)")
        # keyed by id: holding the reference keeps the id stable
        _validated_tableaus[id(tab)] = tab

    labels = np.asarray(labels)
    is_kin = labels == KINETIC
    is_ns = labels == NS
    has_kin = bool(is_kin.any())
    has_ns = bool(is_ns.any())
    eps_on = bool(np.any(mesh.eps_node)) or bool(np.any(mesh.eps_interface))
    s = tab.n_stages
    # a stage's contribution is only assembled if a later stage references it
    need_ex = [bool(np.any(tab.a_ex[j + 1:, j] != 0.0)) for j in range(s)]
    need_im = [bool(np.any(tab.a_im[j + 1:, j] != 0.0)) for j in range(s)]

    def tick():
        return time.perf_counter() if timers is not None else 0.0

    def tock(t0):
        if timers is not None:
            timers["kinetic"] = timers.get("kinetic", 0.0) + (time.perf_counter() - t0)

    patch = None
    g0 = None
    if has_kin:
        if g is None or grid is None:
            raise ValueError("kinetic cells present but g or velocity grid missing")
        patch = _KineticPatch(labels, mesh)
        g0 = np.ascontiguousarray(g[patch.kin])

    def limit(U_st, final):
        if opts.m_tvb is None:
            return U_st
        if final:
            mask = None
        else:
            lf, lk = opts.limit_stages, opts.limit_kinetic_stages
            if lf and (lk or not has_kin):
                mask = None
            elif not lf and not lk:
                return U_st
            elif lf:
                mask = ~is_kin
            else:
                mask = is_kin
        limited = tvb_limit(U_st, mesh, basis, opts.m_tvb)
        if mask is None:
            return limited
        return np.where(mask[:, None, None], limited, U_st)

    rhs_u = [None] * s
    trans = [None] * s
    srcs = [None] * s
    U_st = U
    g_st = g0

    want_vis = has_ns and eps_on

    for l in range(s):
        final = l == s - 1
        if l > 0:
            U_st = U.copy()
            for j in range(l):
                a = tab.a_ex[l, j]
                if a != 0.0:
                    U_st += (dt * a) * rhs_u[j]
            U_st = limit(U_st, final)
        prim = to_primitive(U_st, where=f"(stage {l + 1})")

        # fluid RHS first: the tgrad rider delivers r for the stiff solve
        rhs = r_st = None
        if not final and need_ex[l]:
            if want_vis:
                r_st = temperature_gradient(U_st, mesh, basis, prim=prim)
            rhs, vis, r_rider = fluid_rhs(
                U_st, mesh, basis, lam=max_wave_speed(U_st, prim=prim), prim=prim,
                r=r_st, want_viscous=want_vis, want_tgrad=has_kin and not want_vis,
            )
            if vis is not None:
                rhs[is_ns, :, 2] += vis[is_ns]
            if r_rider is not None:
                r_st = r_rider

        if has_kin:
            t0 = tick()
            if r_st is None:
                r_st = temperature_gradient(U_st, mesh, basis, prim=prim)
            prim_kin = _prim_take(prim, patch.kin)
            s2 = None
            if l > 0:
                acc = patch.eps_node * g0
                for j in range(l):
                    ae, ai = tab.a_ex[l, j], tab.a_im[l, j]
                    if ae != 0.0:
                        acc -= (dt * ae) * trans[j]
                    if ai != 0.0:
                        acc += (dt * ai) * srcs[j]
                s2 = recover_equilibrium_g(U_st[patch.kin], r_st[patch.kin], grid, prim=prim_kin)
                g_st = implicit_g_stage_solve(acc, patch.eps_node, tab.a_im[l, l], dt, s2)
            elif need_im[0]:
                s2 = recover_equilibrium_g(U_st[patch.kin], r_st[patch.kin], grid, prim=prim_kin)
            if rhs is not None:
                if patch.border.size:
                    g_border = recover_equilibrium_g(
                        U_st[patch.border], r_st[patch.border], grid,
                        prim=_prim_take(prim, patch.border),
                    )
                else:
                    g_border = None
                fl, fr = patch.iface_traces(g_st, g_border, basis, grid.n_points)
                micro, trans_l = patch.kinetic_rhs(g_st, prim_kin, fl, fr, basis, grid)
                rhs[patch.kin] += micro
                trans[l] = trans_l
            if not final and need_im[l]:
                srcs[l] = s2 - g_st
            tock(t0)

        if final:
            break
        rhs_u[l] = rhs

    if has_kin:
        g_new = g.copy()
        g_new[patch.kin] = g_st
    else:
        g_new = None if g is None else g
    return U_st, g_new


# ---------------------------------------------------------------------------
# single-regime wrappers

def euler_rk_step(U, mesh, basis, tab, dt, m_tvb=1.0, limit_stages=True):
    labels = np.full(mesh.n_cells, EULER)
    opts = StepOptions(m_tvb=m_tvb, limit_stages=limit_stages)
    U2, _ = advance_step(U, None, labels, mesh, basis, None, tab, dt, opts)
    return U2


def ns_ldg_step(U, mesh, basis, tab, dt, m_tvb=1.0, limit_stages=True):
    labels = np.full(mesh.n_cells, NS)
    opts = StepOptions(m_tvb=m_tvb, limit_stages=limit_stages)
    U2, _ = advance_step(U, None, labels, mesh, basis, None, tab, dt, opts)
    return U2


def kinetic_imex_step(U, g, mesh, basis, grid, tab, dt, m_tvb=1.0, limit_kinetic_stages=True):
    labels = np.full(mesh.n_cells, KINETIC)
    opts = StepOptions(m_tvb=m_tvb, limit_kinetic_stages=limit_kinetic_stages)
    return advance_step(U, g, labels, mesh, basis, grid, tab, dt, opts)
