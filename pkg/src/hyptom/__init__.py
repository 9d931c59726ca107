"""Geometric tomography of convex bodies in the hyperbolic plane."""

from .hypcore import (
    ORIGIN,
    GeometryError,
    HPoint,
    Isometry,
    ModelPoint,
    disc,
    dist,
    from_model,
    klein,
    mink_inner,
    reflect,
    rotate_about,
    to_model,
    uhp,
)
from .geodesics import (
    Geodesic,
    Interval,
    angle_at,
    common_perpendicular,
    coord,
    foot,
    geodesic_through,
    intersect,
    perpendicular_at,
    point_at,
    signed_dist,
)
from .kernels import BACKEND

__version__ = "0.1.0"
