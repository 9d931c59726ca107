# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops; see :mod:`hyptom._pykernels` for the reference versions."""

import numpy as np

from libc.math cimport acosh, cos, fabs, log, sin, sqrt


def foot_coords(const double[:, ::1] P, const double[::1] c, const double[::1] u,
                const double[::1] n):
    cdef Py_ssize_t i, N = P.shape[0]
    cdef double a, b, s, p0, p1, p2
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] t = out
    for i in range(N):
        p0 = P[i, 0]
        p1 = P[i, 1]
        p2 = P[i, 2]
        a = p0 * c[0] - p1 * c[1] - p2 * c[2]
        b = -p0 * u[0] + p1 * u[1] + p2 * u[2]
        s = -p0 * n[0] + p1 * n[1] + p2 * n[2]
        if b >= 0:
            t[i] = log((a + b) / sqrt(1.0 + s * s))
        else:
            t[i] = -log((a - b) / sqrt(1.0 + s * s))
    return out


def max_inner(const double[:, ::1] P, const double[:, ::1] normals):
    cdef Py_ssize_t i, k, N = P.shape[0], K = normals.shape[0]
    cdef double best, v
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] res = out
    for i in range(N):
        best = -1e300
        for k in range(K):
            v = -P[i, 0] * normals[k, 0] + P[i, 1] * normals[k, 1] + P[i, 2] * normals[k, 2]
            if v > best:
                best = v
        res[i] = best
    return out


def disc_gauge(const double[:, ::1] P, const double[:, ::1] centers, const double[::1] radii):
    cdef Py_ssize_t i, k, N = P.shape[0], K = centers.shape[0]
    cdef double best, v, ch
    out = np.empty(N, dtype=np.float64)
    cdef double[::1] res = out
    for i in range(N):
        best = -1e300
        for k in range(K):
            ch = P[i, 0] * centers[k, 0] - P[i, 1] * centers[k, 1] - P[i, 2] * centers[k, 2]
            if ch < 1.0:
                ch = 1.0
            v = acosh(ch) - radii[k]
            if v > best:
                best = v
        res[i] = best
    return out


def farthest_pair(const double[:, ::1] P):
    cdef Py_ssize_t i, j, N = P.shape[0]
    cdef Py_ssize_t bi = 0, bj = 0
    cdef double best = 1.0, v
    for i in range(N):
        for j in range(i + 1, N):
            v = P[i, 0] * P[j, 0] - P[i, 1] * P[j, 1] - P[i, 2] * P[j, 2]
            if v > best:
                best = v
                bi = i
                bj = j
    return bi, bj, best


def nearest_index(const double[:, ::1] P, const double[::1] x):
    cdef Py_ssize_t i, bi = 0, N = P.shape[0]
    cdef double best = 1e300, v
    for i in range(N):
        v = P[i, 0] * x[0] - P[i, 1] * x[1] - P[i, 2] * x[2]
        if v < best:
            best = v
            bi = i
    return bi


def fourier_eval(const double[::1] theta, const double[::1] ks, const double[::1] a,
                 const double[::1] b):
    cdef Py_ssize_t i, m, N = theta.shape[0], M = ks.shape[0]
    cdef double th, val, der, ck, sk
    vals = np.empty(N, dtype=np.float64)
    ders = np.empty(N, dtype=np.float64)
    cdef double[::1] v = vals
    cdef double[::1] d = ders
    for i in range(N):
        th = theta[i]
        val = 0.0
        der = 0.0
        for m in range(M):
            ck = cos(ks[m] * th)
            sk = sin(ks[m] * th)
            val += a[m] * ck + b[m] * sk
            der += ks[m] * (b[m] * ck - a[m] * sk)
        v[i] = val
        d[i] = der
    return vals, ders
