"""numpy implementation of the velocity-space kernels.

Every function is batched over a leading axis of size n (one row per spatial
Gauss node) with n_v velocity points per row.  The compiled core in
`_core_c.pyx` exposes the same signatures; `hierbgk.core` picks one at import.
"""

import numpy as np

_SQRT_2PI = np.sqrt(2.0 * np.pi)

# floor applied to the Maxwellian when it appears in a denominator
M_FLOOR = 1e-300


def maxwellian(rho, u, T, v):
    """M[i, j] = rho_i / sqrt(2 pi T_i) * exp(-(v_j - u_i)^2 / (2 T_i))."""
    w = v[None, :] - u[:, None]
    return (rho / (_SQRT_2PI * np.sqrt(T)))[:, None] * np.exp(-w * w / (2.0 * T)[:, None])


def moments(f, v, dv):
    """Discrete (mass, momentum, energy) moments, out[i] = dv*sum(m(v)*f[i])."""
    out = np.empty((f.shape[0], 3))
    out[:, 0] = f.sum(axis=1)
    out[:, 1] = f @ v
    out[:, 2] = 0.5 * (f @ (v * v))
    out *= dv
    return out


def flux_moments(f, v, dv):
    """Discrete moments against v*m(v) = (v, v^2, v^3/2)."""
    out = np.empty((f.shape[0], 3))
    v2 = v * v
    out[:, 0] = f @ v
    out[:, 1] = f @ v2
    out[:, 2] = 0.5 * (f @ (v2 * v))
    out *= dv
    return out


def project_complement(f, rho, u, T, v, dv):
    """(I - Pi_M) f with discrete brackets; the Maxwellian state is (rho,u,T)."""
    w = v[None, :] - u[:, None]
    psi = w * w / (2.0 * T)[:, None] - 0.5
    a = dv * f.sum(axis=1) / rho
    b = dv * np.einsum("ij,ij->i", w, f) / (rho * T)
    c = (2.0 * dv / rho) * np.einsum("ij,ij->i", psi, f)
    M = (rho / (_SQRT_2PI * np.sqrt(T)))[:, None] * np.exp(-w * w / (2.0 * T)[:, None])
    return f - (a[:, None] + b[:, None] * w + c[:, None] * psi) * M


def weighted_l2(f, rho, u, T, v, dv):
    """Maxwellian-weighted L2 norm per row: sqrt(dv * sum f^2 / M / rho).

    Zero samples contribute nothing even where M underflows; M is floored at
    M_FLOOR so far-tail junk cannot produce inf.
    """
    M = maxwellian(rho, u, T, v)
    M = np.maximum(M, M_FLOOR)
    ratio = np.where(f == 0.0, 0.0, f * f / M)
    return np.sqrt(dv * ratio.sum(axis=1) / rho)


def scaled_b_maxwellian(rho, u, T, scale, v):
    """scale_i * B(V) * M with B(V) = (V^2 - 3) V / 2, V = (v - u)/sqrt(T)."""
    sqT = np.sqrt(T)
    V = (v[None, :] - u[:, None]) / sqT[:, None]
    B = 0.5 * (V * V - 3.0) * V
    M = (rho / (_SQRT_2PI * sqT))[:, None] * np.exp(-0.5 * V * V)
    return scale[:, None] * B * M


def third_central_moment(f, u, v, dv):
    """out[i] = dv * sum_j (v_j - u_i)^3 f[i, j] / 2."""
    w = v[None, :] - u[:, None]
    return 0.5 * dv * np.einsum("ij,ij->i", w * w * w, f)
