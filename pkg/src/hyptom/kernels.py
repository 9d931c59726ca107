"""Kernel dispatch: the compiled extension when built, numpy otherwise.

Set ``HYPTOM_PURE=1`` before import to force the numpy path.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("HYPTOM_PURE") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _pykernels


def _c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def foot_coords(P, c, u, n):
    """Arclength coordinate along a geodesic (c, u, n) of the feet of the rows of P."""
    return _impl.foot_coords(_c(P), _c(c), _c(u), _c(n))


def max_inner(P, normals):
    return _impl.max_inner(_c(P), _c(normals))


def disc_gauge(P, centers, radii):
    return _impl.disc_gauge(_c(P), _c(centers), _c(radii))


def farthest_pair(P):
    i, j, ch = _impl.farthest_pair(_c(P))
    return int(i), int(j), float(ch)


def nearest_index(P, x):
    return int(_impl.nearest_index(_c(P), _c(x)))


def fourier_eval(theta, ks, a, b):
    return _impl.fourier_eval(_c(np.atleast_1d(theta)), _c(ks), _c(a), _c(b))
