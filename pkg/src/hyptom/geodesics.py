"""Complete geodesic lines and arclength intervals on them.

A line is stored as an orthonormal Minkowski frame ``(c, u, n)``: the base
point ``c``, the unit tangent ``u`` at ``c`` and the unit normal
``n = J(u x c)``.  The parametrization is ``c cosh t + u sinh t``.  With this
choice ``<p, n> > 0`` on the right of the direction of travel, so a boundary
traversed counterclockwise has its body on the non-positive side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hypcore import (
    ALG_TOL,
    GEOM_TOL,
    GeometryError,
    HPoint,
    ModelPoint,
    _vec,
    from_model,
    mcross,
    minner,
    normalize_spacelike,
    normalize_timelike,
    to_model,
)


class Geodesic:
    __slots__ = ("c", "u", "n")

    def __init__(self, c, u):
        c = normalize_timelike(c)
        u = np.asarray(u, dtype=float)
        u = normalize_spacelike(u + minner(u, c) * c)
        n = normalize_spacelike(mcross(u, c))
        for a in (c, u, n):
            a.flags.writeable = False
        self.c, self.u, self.n = c, u, n

    def __repr__(self):
        return f"Geodesic(c={self.c.tolist()}, u={self.u.tolist()})"

    @classmethod
    def from_normal(cls, n) -> "Geodesic":
        """The line ``{<p, n> = 0}`` with its positive side along ``n``."""
        n = normalize_spacelike(n)
        c = normalize_timelike(np.array([1.0, 0.0, 0.0]) + n[0] * n)
        g = cls(c, mcross(c, n))
        return g if minner(g.n, n) > 0 else g.reversed()

    @property
    def base(self) -> HPoint:
        return HPoint.from_vec(self.c, renormalize=False)

    def reversed(self) -> "Geodesic":
        return Geodesic(self.c, -self.u)

    def point_vec(self, t: float) -> np.ndarray:
        return self.c * math.cosh(t) + self.u * math.sinh(t)

    def points(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        return np.outer(np.cosh(ts), self.c) + np.outer(np.sinh(ts), self.u)

    def tangent_at(self, x) -> np.ndarray:
        """Unit tangent vector at ``x`` pointing in the direction of travel."""
        x = _vec(x)
        return normalize_spacelike(mcross(x, self.n))

    def contains(self, p, tol=GEOM_TOL) -> bool:
        v = _vec(p)
        return abs(minner(v, self.n)) <= tol * max(1.0, abs(v[0]))

    def same_line(self, other: "Geodesic", tol=GEOM_TOL) -> bool:
        return min(np.abs(self.n - other.n).max(), np.abs(self.n + other.n).max()) < tol

    def transformed(self, iso) -> "Geodesic":
        return Geodesic(iso.apply_vec(self.c), iso.apply_vec(self.u))

    def to_json(self) -> dict:
        return {
            "kind": "geodesic",
            "p": to_model(self.point_vec(0.0), "disc").to_json(),
            "q": to_model(self.point_vec(1.0), "disc").to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Geodesic":
        if obj.get("kind", "geodesic") != "geodesic":
            raise GeometryError(f"expected a geodesic, got kind {obj.get('kind')!r}")
        return geodesic_through(from_model(ModelPoint.from_json(obj["p"])), from_model(ModelPoint.from_json(obj["q"])))


@dataclass(frozen=True)
class Interval:
    g: Geodesic
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if self.t_hi < self.t_lo:
            raise GeometryError("interval with t_hi < t_lo")

    @property
    def length(self) -> float:
        return self.t_hi - self.t_lo

    @property
    def lo(self) -> HPoint:
        return point_at(self.g, self.t_lo)

    @property
    def hi(self) -> HPoint:
        return point_at(self.g, self.t_hi)


def geodesic_through(p, q) -> Geodesic:
    """The line through ``p`` and ``q``, based at ``p`` and heading to ``q``."""
    pv, qv = _vec(p), _vec(q)
    if np.abs(pv - qv).max() < ALG_TOL * max(1.0, abs(pv[0])):
        raise GeometryError("degenerate geodesic: coincident points")
    return Geodesic(pv, qv)


def from_point_direction(p, direction) -> Geodesic:
    return Geodesic(_vec(p), direction)


def signed_dist(p, g: Geodesic) -> float:
    return math.asinh(minner(_vec(p), g.n))


def foot(p, g: Geodesic) -> HPoint:
    v = _vec(p)
    return HPoint.from_vec(v - minner(v, g.n) * g.n)


def point_at(g: Geodesic, t: float) -> HPoint:
    return HPoint.from_vec(g.point_vec(t))


def foot_coord(g: Geodesic, p) -> float:
    """Arclength coordinate of the foot of ``p`` on ``g`` (``p`` may be off ``g``)."""
    v = _vec(p)
    a = -minner(v, g.c)
    b = minner(v, g.u)
    s = minner(v, g.n)
    t = math.log((a + abs(b)) / math.sqrt(1.0 + s * s))
    return t if b >= 0 else -t


def coord(g: Geodesic, q) -> float:
    if not g.contains(q):
        raise GeometryError("point is not on the geodesic")
    return foot_coord(g, q)


def perpendicular_at(g: Geodesic, x) -> Geodesic:
    """The line through ``x`` on ``g`` heading towards the positive side of ``g``."""
    if not g.contains(x):
        raise GeometryError("point is not on the geodesic")
    return Geodesic(_vec(x), g.n)


def perpendicular_through(g: Geodesic, p) -> Geodesic:
    """The member of ``g``'s perpendicular family through an arbitrary point ``p``."""
    return Geodesic(_vec(foot(p, g)), g.n)


def intersect(g1: Geodesic, g2: Geodesic) -> HPoint | None:
    """Common point of two lines, or ``None`` when they are disjoint or asymptotic."""
    if g1.same_line(g2):
        raise GeometryError("coincident geodesics")
    k = minner(g1.n, g2.n)
    if abs(k) >= 1.0 - GEOM_TOL:
        return None
    return HPoint.from_vec(mcross(g1.n, g2.n))


def angle_at(g1: Geodesic, g2: Geodesic, x) -> float:
    if not (g1.contains(x) and g2.contains(x)):
        raise GeometryError("point is not on both geodesics")
    c = minner(g1.tangent_at(x), g2.tangent_at(x))
    return math.acos(min(1.0, max(-1.0, c)))


def common_perpendicular(g1: Geodesic, g2: Geodesic) -> Geodesic:
    """The line meeting both ultraparallel lines at right angles, based on ``g1``."""
    if g1.same_line(g2):
        raise GeometryError("no common perpendicular: coincident geodesics")
    k = minner(g1.n, g2.n)
    if abs(k) <= 1.0 + GEOM_TOL:
        raise GeometryError("no common perpendicular: geodesics intersect or are asymptotic")
    m = normalize_spacelike(mcross(g1.n, g2.n))
    a = normalize_timelike(mcross(m, g1.n))
    b = normalize_timelike(mcross(m, g2.n))
    return geodesic_through(a, b)


def line_distance(g1: Geodesic, g2: Geodesic) -> float:
    """Distance between two ultraparallel lines (zero if they meet)."""
    k = abs(minner(g1.n, g2.n))
    return math.acosh(k) if k > 1.0 else 0.0


def line_at_angle(p, theta: float, frame=None) -> Geodesic:
    """The line through ``p`` whose direction makes angle ``theta`` in ``frame``."""
    from .hypcore import direction_at, frame_at

    F = frame_at(p) if frame is None else frame
    return Geodesic(_vec(p), direction_at(F, theta))
