"""Text serialization of solution frames and run reports.

A frame is one snapshot: a single '#' header line of key=value metadata
followed by one row per Gauss node, columns

    x rho u T q regime nu_ns nu_b

with floats at 17 significant digits (lossless for binary64) and the
regime as a single character E/N/K.  Reports are flat key=value files.
"""

import os
from dataclasses import dataclass

import numpy as np

from hierbgk.basis import NodalBasis
from hierbgk.kernels import Mesh1D, temperature_gradient
from hierbgk.macro import heat_flux_fluid, heat_flux_kinetic, to_primitive
from hierbgk.regime import (
    KINETIC,
    REGIME_CHARS,
    compute_indicator_derivatives,
    nu_burnett,
    nu_ns,
)

FRAME_COLUMNS = ("x", "rho", "u", "T", "q", "regime", "nu_ns", "nu_b")


@dataclass
class Frame:
    meta: dict
    x: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    T: np.ndarray
    q: np.ndarray
    regime: np.ndarray  # single chars, one per node
    nu_ns: np.ndarray
    nu_b: np.ndarray

    @property
    def t(self) -> float:
        return float(self.meta["t"])


def frame_from_state(U, g, labels, mesh: Mesh1D, basis: NodalBasis, grid, meta) -> Frame:
    """Assemble a Frame from the live solver state.

    q uses what each regime can know: the third central moment of g on
    kinetic cells, the conductive closure eps*kappa*T_x elsewhere.
    """
    prim = to_primitive(U)
    r = temperature_gradient(U, mesh, basis)
    q = heat_flux_fluid(prim.rho, prim.T, r, mesh.eps_node)
    labels = np.asarray(labels)
    kin = np.flatnonzero(labels == KINETIC)
    if kin.size:
        q[kin] = heat_flux_kinetic(g[kin], prim.u[kin], grid, mesh.eps_node[kin])

    d = compute_indicator_derivatives(U, mesh, basis)
    avg = to_primitive(np.einsum("k,ikc->ic", basis.weights, U), where="(cell averages)")
    eps_c = mesh.eps_center
    per_cell_ns = nu_ns(avg.rho, avg.T, d.t_x, eps_c)
    per_cell_b = nu_burnett(avg.rho, avg.T, d.t_x, d.u_x, d.u_xx, eps_c)

    n_nodes = basis.n_nodes
    chars = np.repeat(np.array([REGIME_CHARS[l] for l in labels]), n_nodes)
    return Frame(
        meta=dict(meta),
        x=mesh.x_nodes.ravel().copy(),
        rho=prim.rho.ravel().copy(),
        u=prim.u.ravel().copy(),
        T=prim.T.ravel().copy(),
        q=q.ravel().copy(),
        regime=chars,
        nu_ns=np.repeat(per_cell_ns, n_nodes),
        nu_b=np.repeat(per_cell_b, n_nodes),
    )


def _fmt(x) -> str:
    return format(float(x), ".17g")


def write_frame(frame: Frame, path):
    keys = sorted(frame.meta)
    header = "# " + " ".join(f"{k}={frame.meta[k]}" for k in keys)
    try:
        with open(path, "w") as fh:
            fh.write(header + "\n")
            for i in range(frame.x.size):
                fh.write(
                    f"{_fmt(frame.x[i])} {_fmt(frame.rho[i])} {_fmt(frame.u[i])} "
                    f"{_fmt(frame.T[i])} {_fmt(frame.q[i])} {frame.regime[i]} "
                    f"{_fmt(frame.nu_ns[i])} {_fmt(frame.nu_b[i])}\n"
                )
    except OSError as exc:
        raise OSError(f"cannot write frame {path}: {exc}") from exc


def _parse_value(tok: str):
    for cast in (int, float):
        try:
            return cast(tok)
        except ValueError:
            pass
    return tok


def load_frame(path) -> Frame:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"cannot read frame {path}: {exc}") from exc
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{path}: missing '#' header line")
    meta = {}
    for tok in lines[0][1:].split():
        if "=" not in tok:
            raise ValueError(f"{path}: bad header token {tok!r}")
        k, v = tok.split("=", 1)
        meta[k] = _parse_value(v)
    cols = ([], [], [], [], [], [], [], [])
    for ln, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        toks = line.replace(",", " ").split()
        if len(toks) != 8:
            raise ValueError(f"{path}:{ln}: expected 8 columns, got {len(toks)}")
        for j, tok in enumerate(toks):
            if j == 5:
                if tok not in ("E", "N", "K"):
                    raise ValueError(f"{path}:{ln}: bad regime label {tok!r}")
                cols[j].append(tok)
            else:
                try:
                    cols[j].append(float(tok))
                except ValueError:
                    raise ValueError(f"{path}:{ln}: bad float {tok!r}") from None
    return Frame(
        meta=meta,
        x=np.array(cols[0]),
        rho=np.array(cols[1]),
        u=np.array(cols[2]),
        T=np.array(cols[3]),
        q=np.array(cols[4]),
        regime=np.array(cols[5]),
        nu_ns=np.array(cols[6]),
        nu_b=np.array(cols[7]),
    )


def write_report(report: dict, path):
    try:
        with open(path, "w") as fh:
            for k, v in report.items():
                if isinstance(v, float):
                    fh.write(f"{k}={_fmt(v)}\n")
                else:
                    fh.write(f"{k}={v}\n")
    except OSError as exc:
        raise OSError(f"cannot write report {path}: {exc}") from exc


def load_report(path) -> dict:
    out = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                k, _, v = line.partition("=")
                out[k] = _parse_value(v)
    except OSError as exc:
        raise OSError(f"cannot read report {path}: {exc}") from exc
    return out
