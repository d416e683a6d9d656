# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled velocity-space kernels; mirrors `_core_np` exactly.

Plain loops, fused per row: for the small arrays this solver works on, the
win over numpy comes from skipping temporaries and per-call dispatch.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt

cnp.import_array()

cdef double SQRT_2PI = sqrt(2.0 * 3.14159265358979323846)
cdef double M_FLOOR_C = 1e-300

M_FLOOR = M_FLOOR_C


def maxwellian(double[::1] rho, double[::1] u, double[::1] T, double[::1] v):
    cdef Py_ssize_t n = rho.shape[0], nv = v.shape[0], i, j
    out_arr = np.empty((n, nv))
    cdef double[:, ::1] out = out_arr
    cdef double pref, inv2T, w
    for i in range(n):
        pref = rho[i] / (SQRT_2PI * sqrt(T[i]))
        inv2T = 0.5 / T[i]
        for j in range(nv):
            w = v[j] - u[i]
            out[i, j] = pref * exp(-w * w * inv2T)
    return out_arr


def moments(double[:, ::1] f, double[::1] v, double dv):
    cdef Py_ssize_t n = f.shape[0], nv = f.shape[1], i, j
    out_arr = np.empty((n, 3))
    cdef double[:, ::1] out = out_arr
    cdef double m0, m1, m2, fv
    for i in range(n):
        m0 = 0.0
        m1 = 0.0
        m2 = 0.0
        for j in range(nv):
            fv = f[i, j]
            m0 += fv
            m1 += v[j] * fv
            m2 += 0.5 * v[j] * v[j] * fv
        out[i, 0] = dv * m0
        out[i, 1] = dv * m1
        out[i, 2] = dv * m2
    return out_arr


def flux_moments(double[:, ::1] f, double[::1] v, double dv):
    cdef Py_ssize_t n = f.shape[0], nv = f.shape[1], i, j
    out_arr = np.empty((n, 3))
    cdef double[:, ::1] out = out_arr
    cdef double m0, m1, m2, fv, vj
    for i in range(n):
        m0 = 0.0
        m1 = 0.0
        m2 = 0.0
        for j in range(nv):
            fv = f[i, j]
            vj = v[j]
            m0 += vj * fv
            m1 += vj * vj * fv
            m2 += 0.5 * vj * vj * vj * fv
        out[i, 0] = dv * m0
        out[i, 1] = dv * m1
        out[i, 2] = dv * m2
    return out_arr


def project_complement(double[:, ::1] f, double[::1] rho, double[::1] u,
                       double[::1] T, double[::1] v, double dv):
    cdef Py_ssize_t n = f.shape[0], nv = f.shape[1], i, j
    out_arr = np.empty((n, nv))
    cdef double[:, ::1] out = out_arr
    cdef double a, b, c, w, psi, pref, inv2T, Mij
    for i in range(n):
        a = 0.0
        b = 0.0
        c = 0.0
        inv2T = 0.5 / T[i]
        for j in range(nv):
            w = v[j] - u[i]
            psi = w * w * inv2T - 0.5
            a += f[i, j]
            b += w * f[i, j]
            c += psi * f[i, j]
        a = dv * a / rho[i]
        b = dv * b / (rho[i] * T[i])
        c = 2.0 * dv * c / rho[i]
        pref = rho[i] / (SQRT_2PI * sqrt(T[i]))
        for j in range(nv):
            w = v[j] - u[i]
            psi = w * w * inv2T - 0.5
            Mij = pref * exp(-w * w * inv2T)
            out[i, j] = f[i, j] - (a + b * w + c * psi) * Mij
    return out_arr


def weighted_l2(double[:, ::1] f, double[::1] rho, double[::1] u,
                double[::1] T, double[::1] v, double dv):
    cdef Py_ssize_t n = f.shape[0], nv = f.shape[1], i, j
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double acc, pref, inv2T, w, Mij
    for i in range(n):
        acc = 0.0
        pref = rho[i] / (SQRT_2PI * sqrt(T[i]))
        inv2T = 0.5 / T[i]
        for j in range(nv):
            if f[i, j] != 0.0:
                w = v[j] - u[i]
                Mij = pref * exp(-w * w * inv2T)
                if Mij < M_FLOOR_C:
                    Mij = M_FLOOR_C
                acc += f[i, j] * f[i, j] / Mij
        out[i] = sqrt(dv * acc / rho[i])
    return out_arr


def scaled_b_maxwellian(double[::1] rho, double[::1] u, double[::1] T,
                        double[::1] scale, double[::1] v):
    cdef Py_ssize_t n = rho.shape[0], nv = v.shape[0], i, j
    out_arr = np.empty((n, nv))
    cdef double[:, ::1] out = out_arr
    cdef double pref, isqT, V, B
    for i in range(n):
        isqT = 1.0 / sqrt(T[i])
        pref = rho[i] / (SQRT_2PI * sqrt(T[i]))
        for j in range(nv):
            V = (v[j] - u[i]) * isqT
            B = 0.5 * (V * V - 3.0) * V
            out[i, j] = scale[i] * B * pref * exp(-0.5 * V * V)
    return out_arr


def third_central_moment(double[:, ::1] f, double[::1] u, double[::1] v, double dv):
    cdef Py_ssize_t n = f.shape[0], nv = f.shape[1], i, j
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double acc, w
    for i in range(n):
        acc = 0.0
        for j in range(nv):
            w = v[j] - u[i]
            acc += w * w * w * f[i, j]
        out[i] = 0.5 * dv * acc
    return out_arr
