"""Convex bodies: radial, half-plane intersection and disc intersection back-ends.

Every body exposes the same queries.  The boundary is parametrized by a
single real parameter ``s`` in ``[0, period)``, counterclockwise as seen from
the interior: the polar angle for radial bodies, and ``piece + fraction``
for the piecewise back-ends (integer ``s`` is a corner).  A continuous
*gauge* function, negative inside and zero on the boundary, drives all
root finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.spatial import ConvexHull

from . import kernels
from .geodesics import Geodesic, foot_coord, geodesic_through, perpendicular_at, point_at
from .hypcore import (
    GEOM_TOL,
    GeometryError,
    HPoint,
    Isometry,
    ModelPoint,
    _vec,
    dist,
    dist_many,
    from_model,
    mcross,
    minner,
    normalize_spacelike,
    normalize_timelike,
    to_model,
)

DEFAULT_SAMPLES = 2048
_FLIP = np.diag([1.0, 1.0, -1.0])


@dataclass(frozen=True)
class BoundarySample:
    """A boundary point with its supporting line and inward normal line.

    ``tangent`` heads counterclockwise, so the body lies on its
    non-positive side.  Corner points appear twice, once per one-sided
    tangent, with ``corner`` set.
    """

    x: HPoint
    tangent: Geodesic
    normal: Geodesic
    param: float
    corner: bool = False


class Body:
    kind = "body"
    period: float = 2 * math.pi
    n_corners = 0

    # -- back-end hooks ---------------------------------------------------

    def gauge_many(self, P: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def points_param(self, S) -> np.ndarray:
        raise NotImplementedError

    def tangent_vec(self, s: float, side: int = 1) -> np.ndarray:
        """Unit counterclockwise tangent; ``side=-1`` takes the incoming one at a corner."""
        raise NotImplementedError

    def param_of(self, x) -> float:
        raise NotImplementedError

    def transformed(self, iso: Isometry) -> "Body":
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def _piece_lengths(self) -> np.ndarray:
        """Arclength of each unit parameter piece (piecewise back-ends)."""
        raise NotImplementedError

    # -- shared machinery -------------------------------------------------

    @property
    def interior_point(self) -> HPoint:
        return self._interior

    def gauge(self, p) -> float:
        return float(self.gauge_many(np.atleast_2d(_vec(p)))[0])

    def contains(self, p, tol=GEOM_TOL) -> bool:
        return self.gauge(p) <= tol

    def point_param(self, s: float) -> np.ndarray:
        return self.points_param(np.array([s]))[0]

    def sample_param(self, s: float, side: int = 1, corner: bool = False) -> BoundarySample:
        x = self.point_param(s)
        t = self.tangent_vec(s, side)
        tangent = Geodesic(x, t)
        normal = Geodesic(x, -tangent.n)
        return BoundarySample(HPoint.from_vec(x), tangent, normal, float(s), corner)

    def corner_params(self) -> list[float]:
        return []

    def is_corner_param(self, s: float, tol=1e-12) -> bool:
        return any(abs(((s - c + 0.5 * self.period) % self.period) - 0.5 * self.period) < tol for c in self.corner_params())

    def _sample_plan(self, m: int, with_corners: bool):
        """Parameters (s, side, corner) for ``m`` samples distributed by arclength."""
        if not self.corner_params():
            return [(self.period * k / m, 1, False) for k in range(m)]
        lengths = self._piece_lengths()
        n = len(lengths)
        if with_corners:
            counts = _allocate(m, lengths, minimum=2)
            plan = []
            for k, c in enumerate(counts):
                for j in range(c):
                    frac = j / (c - 1)
                    if j == 0:
                        plan.append((float(k), 1, True))
                    elif j == c - 1:
                        plan.append((float(k + 1) % n if k + 1 < n else float(n), -1, True))
                    else:
                        plan.append((k + frac, 1, False))
            return [(s % self.period if side == 1 else s, side, c) for s, side, c in plan]
        counts = _allocate(m, lengths, minimum=0)
        return [(k + (j + 0.5) / c, 1, False) for k, c in enumerate(counts) for j in range(c)]

    def boundary(self, m: int) -> list[BoundarySample]:
        """``m`` samples, counterclockwise; corners contribute two one-sided samples."""
        if m < 3:
            raise GeometryError("boundary sampling needs m >= 3")
        return [self.sample_param(s, side, c) for s, side, c in self._sample_plan(m, True)]

    def regular_samples(self, m: int) -> list[BoundarySample]:
        """``m`` samples avoiding corners."""
        return [self.sample_param(s, side, c) for s, side, c in self._sample_plan(m, False)]

    @cached_property
    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense boundary points and their parameters, corners included."""
        plan = self._sample_plan(DEFAULT_SAMPLES, True)
        S = np.unique(np.array([s % self.period for s, _, _ in plan]))
        return self.points_param(S), S

    def perimeter(self) -> float:
        P, _ = self.dense
        Q = np.vstack([P, P[:1]])
        return float(np.sum(np.arccosh(np.maximum(1.0, -np.einsum("ij,ij->i", Q[:-1] * [-1, 1, 1], Q[1:])))))

    def samples_at(self, x) -> list[BoundarySample]:
        """Samples at a boundary point; two (one-sided) when ``x`` is a corner."""
        s = self.param_of(x)
        xv = _vec(x)
        for c in self.corner_params():
            if dist(self.point_param(c), xv) < 1e-9:
                return [self.sample_param(c, -1, True), self.sample_param(c, 1, True)]
        return [self.sample_param(s)]

    def foot_range(self, L: Geodesic) -> tuple[float, float]:
        """Extreme foot coordinates of the boundary on ``L``."""
        P, S = self.dense
        t = kernels.foot_coords(P, L.c, L.u, L.n)
        i_lo, i_hi = int(np.argmin(t)), int(np.argmax(t))
        f = lambda s: foot_coord(L, self.point_param(s))
        t_lo = min(float(t[i_lo]), self._refine(f, S, i_lo, 1.0))
        t_hi = max(float(t[i_hi]), -self._refine(lambda s: -f(s), S, i_hi, 1.0))
        return t_lo, t_hi

    def _refine(self, f, S, i, _sign) -> float:
        n = len(S)
        a = S[i - 1] if i > 0 else S[-1] - self.period
        b = S[i + 1] if i + 1 < n else S[0] + self.period
        res = minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": 1e-13, "maxiter": 500})
        return float(min(res.fun, f(S[i])))

    def max_dist_from(self, p) -> float:
        P, _ = self.dense
        return float(dist_many(P, p).max())

    def nearest_boundary(self, p, refine=True) -> tuple[float, float]:
        """(parameter, distance) of the boundary point closest to ``p``."""
        P, S = self.dense
        pv = _vec(p)
        i = kernels.nearest_index(P, pv)
        f = lambda s: dist(self.point_param(s), pv)
        if not refine:
            return float(S[i]), f(S[i])
        n = len(S)
        a = S[i - 1] if i > 0 else S[-1] - self.period
        b = S[i + 1] if i + 1 < n else S[0] + self.period
        res = minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": 1e-13, "maxiter": 500})
        s_best = float(res.x) if res.fun <= f(S[i]) else float(S[i])
        # polish on the stationarity condition <p, T(s)> = 0, which is linear in the error
        stat = lambda s: minner(pv, self.tangent_vec(s))
        fa, fb = stat(a), stat(b)
        if fa * fb < 0 and not any(a < c < b for c in self._corners_near(a, b)):
            r = brentq(stat, a, b, xtol=1e-15)
            if f(r) <= f(s_best) + 1e-10:
                s_best = r
        return s_best % self.period, f(s_best)

    def _corners_near(self, a, b):
        return [c + k * self.period for c in self.corner_params() for k in (-1, 0, 1)]

    def check_convex(self, trials=10_000, slack=1e-7, seed=0) -> float:
        """Worst gauge over random points on random boundary chords."""
        P, _ = self.dense
        rng = np.random.default_rng(seed)
        i = rng.integers(0, len(P), trials)
        j = rng.integers(0, len(P), trials)
        lam = rng.uniform(0, 1, trials)[:, None]
        # normalized positive combinations of two points sweep the segment between them
        X = (1 - lam) * P[i] + lam * P[j]
        X = _hyperboloid_rows(X)
        worst = float(self.gauge_many(X).max())
        if worst > slack:
            raise GeometryError(f"body is not convex (chord excursion {worst:.3g})")
        return worst


def _allocate(m, lengths, minimum):
    lengths = np.asarray(lengths, float)
    raw = lengths / lengths.sum() * m
    counts = np.maximum(minimum, np.floor(raw).astype(int))
    while counts.sum() < m:
        counts[int(np.argmax(raw - counts))] += 1
    while counts.sum() > m and (counts > max(minimum, 1)).any():
        k = int(np.argmax(np.where(counts > max(minimum, 1), counts - raw, -np.inf)))
        counts[k] -= 1
    return counts


def _hyperboloid_rows(X):
    return X / np.sqrt(X[:, :1] ** 2 - X[:, 1:2] ** 2 - X[:, 2:] ** 2)


# -- radial back-end --------------------------------------------------------


class RadialBody(Body):
    """Star body ``{exp_center(r, theta): r <= rho(theta)}`` with a trigonometric ``rho``.

    ``rho`` is held as a Fourier series (``ks``, cosine ``a``, sine ``b``);
    sampled input is converted by trigonometric interpolation, which is exact
    for band-limited radial functions.
    """

    kind = "radial"

    def __init__(self, frame, ks, a, b, check=True, meta=None):
        self.frame = Isometry(frame) if not isinstance(frame, Isometry) else frame
        self._finv = self.frame.inverse().matrix
        self.ks = np.asarray(ks, float)
        self.a = np.asarray(a, float)
        self.b = np.asarray(b, float)
        self.meta = meta
        self._interior = HPoint.from_vec(self.frame.matrix[:, 0])
        if check:
            grid = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
            if self.rho(grid).min() <= 0:
                raise GeometryError("radial function must be positive")
            self.check_convex()

    @property
    def center(self) -> HPoint:
        return self._interior

    @classmethod
    def from_fourier(cls, center, c, eps=0.0, coeffs=(), rotation=0.0, check=True):
        """``rho = c + eps * sum(a_k cos k t + b_k sin k t)`` from ``[(k, a_k, b_k), ...]``."""
        ks, a, b = [0.0], [float(c)], [0.0]
        for k, ak, bk in coeffs:
            if int(k) != k or k < 1:
                raise GeometryError("Fourier modes must be positive integers")
            ks.append(float(k))
            a.append(eps * ak)
            b.append(eps * bk)
        frame = Isometry.boost_to(center) @ Isometry.rotation(rotation)
        meta = {"c": float(c), "eps": float(eps), "coeffs": [[int(k), float(x), float(y)] for k, x, y in coeffs], "rotation": float(rotation)}
        return cls(frame.matrix, ks, a, b, check=check, meta=meta)

    @classmethod
    def from_samples(cls, center, values, rotation=0.0, check=True, rtol=1e-15):
        values = np.asarray(values, float)
        N = len(values)
        Y = np.fft.rfft(values) / N
        ks = np.arange(len(Y), dtype=float)
        a = 2 * Y.real
        b = -2 * Y.imag
        a[0] = Y[0].real
        if N % 2 == 0:
            a[-1] = Y[-1].real
            b[-1] = 0.0
        keep = (np.abs(a) + np.abs(b)) > rtol * np.abs(values).max()
        keep[0] = True
        frame = Isometry.boost_to(center) @ Isometry.rotation(rotation)
        return cls(frame.matrix, ks[keep], a[keep], b[keep], check=check)

    @classmethod
    def from_function(cls, center, fn, n=DEFAULT_SAMPLES, **kw):
        grid = np.linspace(0, 2 * np.pi, n, endpoint=False)
        return cls.from_samples(center, fn(grid), **kw)

    def rho(self, theta):
        return kernels.fourier_eval(np.asarray(theta, float), self.ks, self.a, self.b)[0]

    def rho_and_derivative(self, theta):
        return kernels.fourier_eval(np.asarray(theta, float), self.ks, self.a, self.b)

    def points_param(self, S):
        S = np.atleast_1d(np.asarray(S, float))
        r = self.rho(S)
        local = np.column_stack([np.cosh(r), np.sinh(r) * np.cos(S), np.sinh(r) * np.sin(S)])
        return local @ self.frame.matrix.T

    def tangent_vec(self, s, side=1):
        r, dr = (v[0] for v in self.rho_and_derivative(np.array([s])))
        ch, sh, cs, sn = math.cosh(r), math.sinh(r), math.cos(s), math.sin(s)
        d = np.array([sh * dr, ch * dr * cs - sh * sn, ch * dr * sn + sh * cs])
        return normalize_spacelike(self.frame.matrix @ d)

    def _local(self, P):
        Q = np.atleast_2d(P) @ self._finv.T
        return np.arcsinh(np.hypot(Q[:, 1], Q[:, 2])), np.arctan2(Q[:, 2], Q[:, 1])

    def gauge_many(self, P):
        d, th = self._local(P)
        return d - self.rho(th)

    def param_of(self, x):
        return float(self._local(_vec(x))[1][0]) % (2 * math.pi)

    def transformed(self, iso):
        frame = iso.matrix @ self.frame.matrix
        b = self.b
        if iso.orientation < 0:
            frame = frame @ _FLIP
            b = -b
        return RadialBody(frame, self.ks, self.a, b, check=False)

    def to_json(self):
        mp = to_model(self.center, "disc").to_json()
        F0 = Isometry.boost_to(self.center).inverse().matrix @ self.frame.matrix
        rotation = math.atan2(F0[2, 1], F0[1, 1])
        if self.meta is not None and abs(rotation - self.meta["rotation"]) < 1e-12:
            return {"kind": "radial", "center": mp, "f": "fourier", **self.meta}
        coeffs = [[int(k), float(x), float(y)] for k, x, y in zip(self.ks[1:], self.a[1:], self.b[1:])]
        return {"kind": "radial", "center": mp, "c": float(self.a[0]), "eps": 1.0, "f": "fourier", "coeffs": coeffs, "rotation": rotation}


# -- half-plane back-end ----------------------------------------------------


class HalfPlaneBody(Body):
    """Finite intersection of closed half-planes ``{<p, n_k> <= 0}``.

    The polygon is found in the Klein view, where half-planes are Euclidean:
    relative to an interior point the non-redundant constraints are the
    vertices of the convex hull of the dual points ``a_k / beta_k``.
    """

    kind = "halfplanes"

    def __init__(self, planes, interior_point=None, vertices=None):
        planes = list(planes)
        if vertices is None:
            planes, vertices = _klein_polygon(planes, interior_point)
        self.planes = planes
        self.vertices = np.array([_vec(v) for v in vertices])
        self.normals = np.array([g.n for g in planes])
        self.n_corners = len(self.vertices)
        if interior_point is None:
            interior_point = HPoint.from_vec(self.vertices.sum(axis=0))
        self._interior = interior_point if isinstance(interior_point, HPoint) else HPoint.from_vec(interior_point)
        if self.gauge(self._interior) >= 0:
            raise GeometryError("interior point is not strictly inside every half-plane")
        self._edges = [geodesic_through(self.vertices[k], self.vertices[(k + 1) % len(self.vertices)]) for k in range(len(self.vertices))]
        self._lengths = np.array([dist(self.vertices[k], self.vertices[(k + 1) % len(self.vertices)]) for k in range(len(self.vertices))])

    @property
    def period(self):
        return float(len(self.vertices))

    @classmethod
    def from_vertices(cls, vertices, interior_point=None, tol=1e-9):
        """Polygon from its vertices in counterclockwise order; checks convexity."""
        V = [np.asarray(_vec(v), float) for v in vertices]
        n = len(V)
        if n < 3:
            raise GeometryError("a polygon needs at least three vertices")
        c = normalize_timelike(np.sum(V, axis=0))
        if _signed_area(V) < 0:
            V = V[::-1]
        planes = [geodesic_through(V[k], V[(k + 1) % n]) for k in range(n)]
        Vs = np.array(V)
        for g in planes:
            if (Vs @ (np.array([-1, 1, 1]) * g.n)).max() > tol:
                raise GeometryError("vertices do not bound a convex polygon")
        return cls(planes, interior_point if interior_point is not None else HPoint.from_vec(c), vertices=V)

    def corner_params(self):
        return [float(k) for k in range(len(self.vertices))]

    def _piece_lengths(self):
        return self._lengths

    def points_param(self, S):
        S = np.atleast_1d(np.asarray(S, float)) % self.period
        k = np.minimum(np.floor(S).astype(int), len(self.vertices) - 1)
        frac = S - k
        out = np.empty((len(S), 3))
        for idx in np.unique(k):
            sel = k == idx
            t = frac[sel] * self._lengths[idx]
            e = self._edges[idx]
            out[sel] = np.outer(np.cosh(t), e.c) + np.outer(np.sinh(t), e.u)
        return out

    def _piece(self, s, side):
        n = len(self.vertices)
        s = s % self.period
        k = int(math.floor(s))
        if side < 0 and abs(s - k) < 1e-12:
            k -= 1
        return k % n

    def tangent_vec(self, s, side=1):
        k = self._piece(s, side)
        return self._edges[k].tangent_at(self.point_param(s))

    def gauge_many(self, P):
        return np.arcsinh(kernels.max_inner(np.atleast_2d(P), self.normals))

    def param_of(self, x):
        xv = _vec(x)
        best, arg = math.inf, 0.0
        for k, e in enumerate(self._edges):
            d = abs(minner(xv, e.n))
            if d < best:
                t = foot_coord(e, xv)
                best, arg = d, k + min(max(t / self._lengths[k], 0.0), 1.0)
        return arg % self.period

    def foot_range(self, L):
        t = kernels.foot_coords(self.vertices, L.c, L.u, L.n)
        return float(t.min()), float(t.max())

    def transformed(self, iso):
        V = iso.apply_many(self.vertices)
        if iso.orientation < 0:
            V = V[::-1]
        return HalfPlaneBody.from_vertices(list(V), iso.apply(self._interior))

    def to_json(self):
        return {
            "kind": "halfplanes",
            "planes": [g.to_json() for g in self.planes],
            "interior": to_model(self._interior, "disc").to_json(),
        }


def _signed_area(V):
    K = np.array([[v[1] / v[0], v[2] / v[0]] for v in V])
    x, y = K[:, 0], K[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _klein_polygon(planes, interior_point):
    if len(planes) < 3:
        raise GeometryError("a bounded intersection needs at least three half-planes")
    N = np.array([g.n for g in planes])
    A, bvec = N[:, 1:], N[:, 0]
    if interior_point is None:
        k0 = _chebyshev_center(A, bvec)
    else:
        v = _vec(interior_point)
        k0 = v[1:] / v[0]
    beta = bvec - A @ k0
    if (beta <= 0).any():
        raise GeometryError("interior point is not strictly inside every half-plane")
    D = A / beta[:, None]
    try:
        hull = ConvexHull(D)
    except Exception as exc:  # qhull raises its own error type
        raise GeometryError(f"degenerate half-plane set: {exc}") from exc
    if (hull.equations[:, 2] >= -1e-15).any():
        raise GeometryError("half-plane intersection is unbounded")
    order = list(hull.vertices)
    kept = [planes[i] for i in order]
    verts = []
    for i in range(len(kept)):
        g1, g2 = kept[i - 1], kept[i]
        w = mcross(g1.n, g2.n)
        if minner(w, w) >= 0:
            raise GeometryError("polygon reaches the ideal boundary")
        verts.append(normalize_timelike(w))
    # vertex i is the start of edge i (plane kept[i])
    return kept, verts


def _chebyshev_center(A, b):
    from scipy.optimize import linprog

    norms = np.linalg.norm(A, axis=1)
    res = linprog(
        c=[0, 0, -1],
        A_ub=np.column_stack([A, norms]),
        b_ub=b,
        bounds=[(-1, 1), (-1, 1), (0, None)],
    )
    if not res.success or res.x[2] <= 0:
        raise GeometryError("half-plane intersection is empty")
    return res.x[:2]


# -- disc-intersection back-end ---------------------------------------------


class ArcBody(Body):
    """Finite intersection of closed hyperbolic discs; boundary made of circular arcs."""

    kind = "arcs"

    def __init__(self, discs, interior_point=None):
        self.centers = np.array([_vec(c) for c, _ in discs])
        self.radii = np.array([float(r) for _, r in discs])
        if (self.radii <= 0).any():
            raise GeometryError("disc radii must be positive")
        self._frames = [Isometry.boost_to(c).matrix for c in self.centers]
        arcs = []
        for i in range(len(self.radii)):
            arc = (0.0, 2 * math.pi)
            for j in range(len(self.radii)):
                if j != i:
                    arc = _arc_meet(arc, self._allowed(i, j))
                    if arc is None:
                        raise GeometryError(f"disc {i} does not contribute a boundary arc")
            arcs.append((i, arc[0], arc[1]))
        mids = np.array([self._arc_point(i, a0 + 0.5 * da) for i, a0, da in arcs])
        if interior_point is None:
            interior_point = HPoint.from_vec(mids.sum(axis=0))
        self._interior = interior_point if isinstance(interior_point, HPoint) else HPoint.from_vec(interior_point)
        Finv = Isometry.boost_to(self._interior).inverse().matrix
        loc = mids @ Finv.T
        ang = np.arctan2(loc[:, 2], loc[:, 1])
        self.arcs = [arcs[k] for k in np.argsort(ang)]
        if self.gauge(self._interior) >= 0:
            raise GeometryError("interior point is not inside every disc")
        full = len(self.arcs) == 1 and self.arcs[0][2] >= 2 * math.pi - 1e-15
        self.n_corners = 0 if full else len(self.arcs)
        if not full:
            for k in range(len(self.arcs)):
                i, a0, da = self.arcs[k]
                j, b0, _ = self.arcs[(k + 1) % len(self.arcs)]
                if dist(self._arc_point(i, a0 + da), self._arc_point(j, b0)) > 1e-8:
                    raise GeometryError("boundary arcs do not close up")

    @property
    def period(self):
        return float(len(self.arcs))

    def _allowed(self, i, j):
        """Angular interval on circle ``i`` lying inside disc ``j``."""
        q = Isometry(self._frames[i]).inverse().apply_vec(self.centers[j])
        ri, rj = self.radii[i], self.radii[j]
        rho = math.hypot(q[1], q[2])
        kappa = (math.cosh(ri) * q[0] - math.cosh(rj)) / math.sinh(ri)
        if rho < 1e-15:
            return (0.0, 2 * math.pi) if kappa <= 0 else None
        ratio = kappa / rho
        if ratio <= -1:
            return (0.0, 2 * math.pi)
        if ratio >= 1:
            return None
        half = math.acos(ratio)
        psi = math.atan2(q[2], q[1])
        return ((psi - half) % (2 * math.pi), 2 * half)

    def _arc_point(self, i, phi):
        r = self.radii[i]
        return self._frames[i] @ np.array([math.cosh(r), math.sinh(r) * math.cos(phi), math.sinh(r) * math.sin(phi)])

    def corner_params(self):
        return [float(k) for k in range(len(self.arcs))] if self.n_corners else []

    def _piece_lengths(self):
        return np.array([math.sinh(self.radii[i]) * da for i, _, da in self.arcs])

    def _locate(self, s, side=1):
        n = len(self.arcs)
        s = s % self.period
        k = int(math.floor(s))
        if side < 0 and abs(s - k) < 1e-12:
            k, frac = (k - 1) % n, 1.0
        else:
            k = min(k, n - 1)
            frac = s - k
        i, a0, da = self.arcs[k]
        return i, a0 + frac * da

    def points_param(self, S):
        S = np.atleast_1d(np.asarray(S, float)) % self.period
        out = np.empty((len(S), 3))
        for idx, s in enumerate(S):
            i, phi = self._locate(s)
            out[idx] = self._arc_point(i, phi)
        return out

    def tangent_vec(self, s, side=1):
        i, phi = self._locate(s, side)
        d = np.array([0.0, -math.sin(phi), math.cos(phi)])
        return normalize_spacelike(self._frames[i] @ d)

    def arc_center_param(self, s, side=1) -> HPoint:
        """Center of the disc whose arc carries parameter ``s``."""
        i, _ = self._locate(s, side)
        return HPoint.from_vec(self.centers[i])

    def gauge_many(self, P):
        return kernels.disc_gauge(np.atleast_2d(P), self.centers, self.radii)

    def param_of(self, x):
        xv = _vec(x)
        best, arg = math.inf, 0.0
        for k, (i, a0, da) in enumerate(self.arcs):
            err = abs(dist(xv, self.centers[i]) - self.radii[i])
            loc = Isometry(self._frames[i]).inverse().apply_vec(xv)
            off = (math.atan2(loc[2], loc[1]) - a0) % (2 * math.pi)
            if off > da:
                off = 0.0 if (2 * math.pi - off) < (off - da) else da
                err += 1.0
            if err < best:
                best, arg = err, k + off / da
        return arg % self.period

    def transformed(self, iso):
        discs = [(iso.apply(c), r) for c, r in zip(self.centers, self.radii)]
        return ArcBody(discs, iso.apply(self._interior))

    def to_json(self):
        return {
            "kind": "arcs",
            "discs": [{"center": to_model(c, "disc").to_json(), "radius": float(r)} for c, r in zip(self.centers, self.radii)],
            "interior": to_model(self._interior, "disc").to_json(),
        }


def _arc_meet(a, b):
    if a is None or b is None:
        return None
    (a0, la), (b0, lb) = a, b
    if la >= 2 * math.pi:
        return b
    if lb >= 2 * math.pi:
        return a
    off = (b0 - a0) % (2 * math.pi)
    pieces = []
    for start in (off, off - 2 * math.pi):
        lo, hi = max(0.0, start), min(la, start + lb)
        if hi - lo > 1e-15:
            pieces.append((lo, hi))
    if not pieces:
        return None
    if len(pieces) > 1:
        raise GeometryError("disc intersection splits a boundary circle")
    lo, hi = pieces[0]
    return ((a0 + lo) % (2 * math.pi), hi - lo)


# -- queries ----------------------------------------------------------------


def contains(K: Body, p, tol=GEOM_TOL) -> bool:
    return K.contains(p, tol)


def boundary(K: Body, m: int = DEFAULT_SAMPLES) -> list[BoundarySample]:
    return K.boundary(m)


def slab_planes(L: Geodesic, t_lo: float, t_hi: float) -> tuple[Geodesic, Geodesic]:
    """Perpendiculars to ``L`` at two coordinates, oriented with the slab on their non-positive side."""
    g_lo = perpendicular_at(L, point_at(L, t_lo))
    g_hi = perpendicular_at(L, point_at(L, t_hi)).reversed()
    return g_lo, g_hi


def support_slab(K: Body, L: Geodesic):
    t_lo, t_hi = K.foot_range(L)
    g_lo, g_hi = slab_planes(L, t_lo, t_hi)
    return g_lo, g_hi, t_lo, t_hi


def ray_points(p, theta: float, ts) -> np.ndarray:
    F = Isometry.boost_to(p).matrix
    ts = np.asarray(ts, float)
    local = np.column_stack([np.cosh(ts), np.sinh(ts) * math.cos(theta), np.sinh(ts) * math.sin(theta)])
    return local @ F.T


def radial_profile(K: Body, p, theta: float, xtol=1e-12) -> float:
    """Distance from interior ``p`` to the boundary along direction ``theta``."""
    if K.gauge(p) >= 0:
        raise GeometryError("radial profile needs an interior point")
    F = Isometry.boost_to(p).matrix
    ct, st = math.cos(theta), math.sin(theta)

    def h(t):
        x = F @ np.array([math.cosh(t), math.sinh(t) * ct, math.sinh(t) * st])
        return K.gauge(x)

    hi = K.max_dist_from(p) + 0.5
    return brentq(h, 0.0, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)


# -- serialization ----------------------------------------------------------


def _point(obj) -> HPoint:
    return from_model(ModelPoint.from_json(obj))


def body_from_json(obj: dict) -> Body:
    kind = obj.get("kind")
    if kind == "radial":
        if obj.get("f", "fourier") != "fourier":
            raise GeometryError("radial bodies only support Fourier radial functions")
        return RadialBody.from_fourier(
            _point(obj["center"]),
            float(obj["c"]),
            float(obj.get("eps", 0.0)),
            [tuple(x) for x in obj.get("coeffs", [])],
            rotation=float(obj.get("rotation", 0.0)),
        )
    if kind == "halfplanes":
        planes = [Geodesic.from_json(g) for g in obj["planes"]]
        interior = _point(obj["interior"]) if "interior" in obj else None
        return HalfPlaneBody(planes, interior)
    if kind == "arcs":
        discs = [(_point(d["center"]), float(d["radius"])) for d in obj["discs"]]
        interior = _point(obj["interior"]) if "interior" in obj else None
        return ArcBody(discs, interior)
    raise GeometryError(f"unknown body kind {kind!r}")
