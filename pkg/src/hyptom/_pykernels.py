"""Numpy implementations of the hot loops.

Used when the compiled extension is unavailable or ``HYPTOM_PURE=1``.
Every function mirrors the signature of its counterpart in ``_ckernels``.
"""

import numpy as np

_J = np.array([-1.0, 1.0, 1.0])


def foot_coords(P, c, u, n):
    a = -(P @ (_J * c))
    b = P @ (_J * u)
    s = P @ (_J * n)
    root = np.sqrt(1.0 + s * s)
    return np.where(b >= 0, np.log((a + np.abs(b)) / root), -np.log((a + np.abs(b)) / root))


def max_inner(P, normals):
    return (P @ (normals * _J).T).max(axis=1)


def disc_gauge(P, centers, radii):
    ch = np.maximum(-(P @ (centers * _J).T), 1.0)
    return (np.arccosh(ch) - radii).max(axis=1)


def farthest_pair(P):
    G = -(P * _J) @ P.T
    np.fill_diagonal(G, 1.0)
    k = int(np.argmax(G))
    i, j = divmod(k, G.shape[1])
    if i > j:
        i, j = j, i
    best = float(G[i, j])
    if best <= 1.0:
        return 0, 0, 1.0
    return i, j, best


def nearest_index(P, x):
    return int(np.argmin(-(P @ (_J * x))))


def fourier_eval(theta, ks, a, b):
    arg = np.multiply.outer(theta, ks)
    ck, sk = np.cos(arg), np.sin(arg)
    vals = ck @ a + sk @ b
    ders = ck @ (ks * b) - sk @ (ks * a)
    return vals, ders
