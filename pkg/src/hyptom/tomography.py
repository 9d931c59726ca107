"""Projections, sections, widths and the measurable consequences built on them."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar

from . import kernels
from .bodies import Body, BoundarySample, HalfPlaneBody, radial_profile, ray_points
from .geodesics import (
    Geodesic,
    Interval,
    geodesic_through,
    intersect,
    line_at_angle,
    perpendicular_at,
    perpendicular_through,
    point_at,
)
from .hypcore import GEOM_TOL, GeometryError, HPoint, Isometry, _vec, dist, minner, normalize_spacelike

SECTION_XTOL = 1e-13
GRAZING = 1e-8


# -- projections and sections ---------------------------------------------


def projection(K: Body, g: Geodesic) -> Interval:
    t_lo, t_hi = K.foot_range(g)
    return Interval(g, t_lo, t_hi)


def _gauge_on(K, g):
    return lambda t: K.gauge(g.point_vec(t))


def section_status(K: Body, g: Geodesic, n_grid=257) -> tuple[str, Interval | None]:
    """``("chord", I)``, ``("grazing", None)`` or ``("miss", None)``."""
    t_lo, t_hi = K.foot_range(g)
    h = _gauge_on(K, g)
    ts = np.linspace(t_lo, t_hi, n_grid)
    vals = K.gauge_many(g.points(ts))
    i = int(np.argmin(vals))
    t_min, h_min = float(ts[i]), float(vals[i])
    if h_min >= 0:
        a, b = ts[max(i - 1, 0)], ts[min(i + 1, n_grid - 1)]
        res = minimize_scalar(h, bounds=(a, b), method="bounded", options={"xatol": 1e-12})
        if res.fun < h_min:
            t_min, h_min = float(res.x), float(res.fun)
        if h_min > GRAZING:
            return "miss", None
        if h_min >= 0:
            return "grazing", None
    lo = _bracket_out(h, t_min, t_lo, -1)
    hi = _bracket_out(h, t_min, t_hi, 1)
    a = brentq(h, lo, t_min, xtol=SECTION_XTOL)
    b = brentq(h, t_min, hi, xtol=SECTION_XTOL)
    if b - a < GRAZING:
        return "grazing", None
    return "chord", Interval(g, a, b)


def _bracket_out(h, t_in, t_edge, sign):
    pad = 1e-7
    t = t_edge
    while h(t) <= 0:
        t = t_edge + sign * pad
        pad *= 10
        if pad > 1e3:
            raise GeometryError("could not bracket a section endpoint")
    return t


def section(K: Body, g: Geodesic) -> Interval | None:
    return section_status(K, g)[1]


def width_at(K: Body, s: BoundarySample) -> float:
    return projection(K, s.normal).length


def is_double_normal(K: Body, g: Geodesic, tol=1e-6) -> bool:
    sec = section(K, g)
    if sec is None:
        raise GeometryError("geodesic does not meet the body")
    pr = projection(K, g)
    return abs(pr.length - sec.length) < tol and abs(pr.t_lo - sec.t_lo) < tol and abs(pr.t_hi - sec.t_hi) < tol


# -- widths and diameter ----------------------------------------------------


@dataclass
class WidthProfile:
    min_w: float
    max_w: float
    widths: np.ndarray
    params: np.ndarray
    corner_fan: tuple[float, float] | None = None

    @property
    def spread(self) -> float:
        return self.max_w - self.min_w

    def constant(self, tol) -> bool:
        return self.spread < tol


def normal_cone_lines(K: Body, s: float, k: int = 8) -> list[Geodesic]:
    """Lines through the corner at ``s`` spanning its normal cone, inward."""
    a = K.sample_param(s, -1)
    b = K.sample_param(s, 1)
    x = a.x.vec
    na, nb = a.normal.u, b.normal.u
    ang = math.acos(min(1.0, max(-1.0, minner(na, nb))))
    if ang < 1e-15:
        return [a.normal]
    w = normalize_spacelike(nb - minner(na, nb) * na)
    return [Geodesic(x, math.cos(ang * j / (k - 1)) * na + math.sin(ang * j / (k - 1)) * w) for j in range(k)]


def width_profile(K: Body, m: int = 360, fan: int = 8, refine: bool = False) -> WidthProfile:
    """Widths at ``m`` corner-free samples; corner normal cones reported separately.

    With ``refine`` the extreme widths are polished by a bounded scalar
    search between the neighbours of the extreme samples.
    """
    if m < 3:
        raise GeometryError("width profile needs m >= 3")
    samples = K.regular_samples(m)
    w = np.array([width_at(K, s) for s in samples])
    S = np.array([s.param for s in samples])
    lo, hi = float(w.min()), float(w.max())
    if refine:
        f = lambda s: width_at(K, K.sample_param(s % K.period))
        hi = max(hi, -_polish(lambda s: -f(s), S, int(np.argmax(w)), K))
        lo = min(lo, _polish(f, S, int(np.argmin(w)), K))
    cf = None
    if K.corner_params():
        fw = [projection(K, g).length for c in K.corner_params() for g in normal_cone_lines(K, c, fan)]
        cf = (min(fw), max(fw))
    return WidthProfile(lo, hi, w, S, cf)


def _polish(f, S, i, K):
    n = len(S)
    a = S[i - 1] if i > 0 else S[-1] - K.period
    b = S[i + 1] if i + 1 < n else S[0] + K.period
    if K.corner_params():
        # stay on the sample's own piece
        k = math.floor(S[i])
        a, b = max(a, k + 1e-12), min(b, k + 1 - 1e-12)
    res = minimize_scalar(f, bounds=(a, b), method="bounded", options={"xatol": 1e-12})
    return float(res.fun)


def _farthest_vertices(V):
    i, j, q = kernels.farthest_pair(V)
    return i, j, math.acosh(max(1.0, q))


def diameter_pair(K: Body, m: int | None = None) -> tuple[np.ndarray, np.ndarray, float]:
    """Farthest pair of boundary points and their distance."""
    if isinstance(K, HalfPlaneBody):
        i, j, d = _farthest_vertices(K.vertices)
        return K.vertices[i], K.vertices[j], d
    if m is None:
        P, S = K.dense
    else:
        S = np.array([s for s, _, _ in K._sample_plan(m, True)]) % K.period
        P = K.points_param(S)
    i, j, _ = _farthest_vertices(P)
    f = lambda z: -dist(K.point_param(z[0]), K.point_param(z[1]))
    res = minimize(f, [S[i], S[j]], method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 2000})
    z = res.x if res.fun < f([S[i], S[j]]) else np.array([S[i], S[j]])
    x, y = K.point_param(z[0]), K.point_param(z[1])
    return x, y, dist(x, y)


def diameter(K: Body, m: int | None = None) -> float:
    if m is not None and m < 3:
        raise GeometryError("diameter needs m >= 3")
    return diameter_pair(K, m)[2]


# -- pencils and measurement tables -----------------------------------------


@dataclass(frozen=True)
class Pencil:
    p: HPoint
    m: int = 360

    def angles(self) -> np.ndarray:
        return np.pi * np.arange(self.m) / self.m

    def lines(self) -> list[Geodesic]:
        return [line_at_angle(self.p, th) for th in self.angles()]


@dataclass
class Row:
    theta: float
    geodesic: Geodesic
    projection: float
    section: float | None
    width: float | None
    double_normal: bool


COLUMNS = ("theta", "projection", "section", "width", "double_normal")


@dataclass
class MeasurementTable:
    rows: list[Row] = field(default_factory=list)

    def column(self, name) -> np.ndarray:
        vals = [getattr(r, name) for r in self.rows]
        return np.array([np.nan if v is None else float(v) for v in vals])

    def spread(self, name) -> float:
        c = self.column(name)
        c = c[~np.isnan(c)]
        return float(c.max() - c.min()) if len(c) else math.nan

    def constant(self, name, tol) -> bool:
        return self.spread(name) < tol

    def summary(self, tol=1e-6) -> dict:
        out = {}
        for name in ("projection", "section", "width"):
            c = self.column(name)
            c = c[~np.isnan(c)]
            if len(c):
                out[name] = {"min": float(c.min()), "max": float(c.max()), "constant": bool(c.max() - c.min() < tol)}
            else:
                out[name] = {"min": None, "max": None, "constant": None}
        out["double_normal"] = {"count": int(sum(r.double_normal for r in self.rows)), "rows": len(self.rows)}
        out["tol"] = tol
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow([repr(r.theta), repr(r.projection), "" if r.section is None else repr(r.section), "" if r.width is None else repr(r.width), str(r.double_normal).lower()])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "columns": list(COLUMNS),
            "rows": [
                {
                    "theta": r.theta,
                    "geodesic": r.geodesic.to_json(),
                    "projection": r.projection,
                    "section": r.section,
                    "width": r.width,
                    "double_normal": r.double_normal,
                }
                for r in self.rows
            ],
        }

    @classmethod
    def from_csv(cls, text: str, p=None) -> "MeasurementTable":
        rdr = csv.DictReader(io.StringIO(text))
        if tuple(rdr.fieldnames or ()) != COLUMNS:
            raise ValueError(f"line 1: expected header {','.join(COLUMNS)}")
        rows = []
        for lineno, rec in enumerate(rdr, start=2):
            try:
                th = float(rec["theta"])
                g = line_at_angle(p, th) if p is not None else None
                rows.append(
                    Row(
                        th,
                        g,
                        float(rec["projection"]),
                        float(rec["section"]) if rec["section"] else None,
                        float(rec["width"]) if rec["width"] else None,
                        rec["double_normal"].strip().lower() == "true",
                    )
                )
            except (ValueError, KeyError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from exc
        return cls(rows)


def exit_sample(K: Body, p, theta: float) -> BoundarySample:
    """Boundary sample where the ray from interior ``p`` in direction ``theta`` leaves ``K``."""
    r = radial_profile(K, p, theta)
    x = ray_points(p, theta, [r])[0]
    return K.sample_param(K.param_of(x))


def pencil_profile(K: Body, P: Pencil, what: str = "projection", dn_tol=1e-6, widths=True) -> MeasurementTable:
    """One row per pencil line; the width column is taken where the line's ray at ``theta`` exits."""
    if what not in ("projection", "section"):
        raise ValueError(f"unknown profile {what!r}")
    interior = K.gauge(P.p) < 0
    if what == "section" and not interior:
        raise GeometryError("section profile needs an interior pencil center")
    rows = []
    for th in P.angles():
        g = line_at_angle(P.p, th)
        pr = projection(K, g)
        status, sec = section_status(K, g)
        dn = False
        if sec is not None:
            dn = abs(pr.length - sec.length) < dn_tol and abs(pr.t_lo - sec.t_lo) < dn_tol and abs(pr.t_hi - sec.t_hi) < dn_tol
        w = width_at(K, exit_sample(K, P.p, th)) if (widths and interior) else None
        rows.append(Row(float(th), g, pr.length, None if sec is None else sec.length, w, dn))
    return MeasurementTable(rows)


def projection_lengths(K: Body, p, m: int) -> np.ndarray:
    return np.array([projection(K, g).length for g in Pencil(HPoint.from_vec(_vec(p)), m).lines()])


def chord_lengths(K: Body, p, m: int) -> np.ndarray:
    """Chord length through ``p`` at the pencil angles, via the radial profile."""
    ang = np.pi * np.arange(m) / m
    return np.array([radial_profile(K, p, th) + radial_profile(K, p, th + math.pi) for th in ang])


def equichordal_defect(K: Body, p, m: int = 360) -> float:
    if K.gauge(p) >= 0:
        raise GeometryError("equichordal defect needs an interior point")
    c = chord_lengths(K, p, m)
    return float(np.max(np.abs(c - np.median(c))))


def point_reflection_asymmetry(K: Body, p, m: int = 360) -> float:
    """``max |g(t) - g(t + pi)|`` of the radial profile about ``p``; zero iff ``K`` is symmetric about ``p``."""
    ang = 2 * np.pi * np.arange(m) / m
    g = np.array([radial_profile(K, p, th) for th in ang])
    return float(np.max(np.abs(g - np.roll(g, -(m // 2))))) if m % 2 == 0 else math.nan


def reflected_hausdorff(K: Body, p, m: int = 256) -> float:
    """Hausdorff distance between ``dK`` and its point reflection about ``p``."""
    sig = Isometry.point_reflection(p)
    S = np.array([s for s, _, _ in K._sample_plan(m, False)])
    X = sig.apply_many(K.points_param(S))
    return max(K.nearest_boundary(x)[1] for x in X)


# -- arbitrarily small projections -------------------------------------------


class ProjectionSweep:
    """Lines ``M(d)`` perpendicular to a line ``L`` through the body, at distance ``d`` from it.

    ``L`` is the perpendicular bisector of a diameter segment, so ``M(0)``
    contains the diameter and ``|P_M(d)(K)|`` runs from ``Diam(K)`` down to 0.
    """

    def __init__(self, K: Body):
        self.K = K
        x, y, self.diam = diameter_pair(K)
        D = geodesic_through(x, y)
        self.L = perpendicular_at(D, point_at(D, 0.5 * self.diam))

    def line(self, d: float) -> Geodesic:
        return perpendicular_at(self.L, point_at(self.L, d))

    def length(self, d: float) -> float:
        return projection(self.K, self.line(d)).length


# beyond this offset cosh(d)^2 swamps the unit norm of hyperboloid vectors
MAX_OFFSET = 16.0


def small_projection(K: Body, delta: float, d0: float = 1.0) -> Geodesic:
    """A line whose projection is shorter than ``delta``, found by doubling its offset."""
    if delta <= 0:
        raise GeometryError("delta must be positive")
    sw = ProjectionSweep(K)
    if delta > sw.diam:
        return sw.line(0.0)
    d = d0
    while d <= MAX_OFFSET:
        if sw.length(d) < delta:
            return sw.line(d)
        d *= 2
    raise GeometryError(f"projection did not shrink below delta within offset {MAX_OFFSET}")


def projection_spectrum(K: Body, targets, xtol=1e-10) -> list[tuple[float, Geodesic, float]]:
    """For each target length in ``(0, Diam]`` a line realizing it, by bisection on the offset."""
    sw = ProjectionSweep(K)
    out = []
    for target in targets:
        if not 0 < target <= sw.diam + 1e-12:
            raise GeometryError(f"target {target} outside (0, diameter]")
        if target >= sw.diam:
            out.append((target, sw.line(0.0), sw.length(0.0)))
            continue
        hi = 1.0
        while sw.length(hi) >= target:
            hi *= 2
            if hi > MAX_OFFSET:
                raise GeometryError(f"target {target} needs an offset beyond {MAX_OFFSET}")
        d = brentq(lambda s: sw.length(s) - target, 0.0, hi, xtol=xtol)
        out.append((target, sw.line(d), sw.length(d)))
    return out


# -- normals and angles ------------------------------------------------------


def crossing_angle(K: Body, s: float, g: Geodesic) -> float:
    """Angle in ``[0, pi/2]`` between ``g`` and ``dK`` at the boundary point with parameter ``s``.

    At a corner the value is ``pi/2`` exactly when ``g`` lies in the normal
    cone, otherwise the smaller one-sided angle.
    """
    x = K.point_param(s)
    d = g.tangent_at(x)
    if K.is_corner_param(s, 1e-9):
        c = min(K.corner_params(), key=lambda c: abs(((s - c + 0.5 * K.period) % K.period) - 0.5 * K.period))
        tm, tp = K.tangent_vec(c, -1), K.tangent_vec(c, 1)
        if _in_normal_cone(d, tm, tp) or _in_normal_cone(-d, tm, tp):
            return math.pi / 2
        return min(_fold(minner(d, tm)), _fold(minner(d, tp)))
    return _fold(minner(d, K.tangent_vec(s)))


def _fold(c):
    a = math.acos(min(1.0, max(-1.0, c)))
    return min(a, math.pi - a)


def _in_normal_cone(nu, tm, tp, tol=1e-12):
    # outward normals at a convex corner pair non-positively with the outgoing tangent
    return minner(nu, tp) <= tol and minner(nu, tm) >= -tol


def intervals_equal(K: Body, g: Geodesic, tol=1e-6) -> bool | None:
    sec = section(K, g)
    if sec is None:
        return None
    pr = projection(K, g)
    return abs(pr.t_lo - sec.t_lo) < tol and abs(pr.t_hi - sec.t_hi) < tol


def endpoint_angles(K: Body, g: Geodesic) -> tuple[float, float] | None:
    sec = section(K, g)
    if sec is None:
        return None
    return tuple(crossing_angle(K, K.param_of(g.point_vec(t)), g) for t in (sec.t_lo, sec.t_hi))


def normal_angle_profile(K: Body, g: Geodesic, m: int = 200, tol=1e-6) -> list[list[tuple[float, float]]]:
    """The angle between ``dK`` and the perpendiculars to ``g``, along both boundary chains.

    ``g`` must be a double normal.  Each chain runs from one foot of ``g``
    to the other and is normalized to start at 0.  Interior corners
    contribute both one-sided values.
    """
    sec = section(K, g)
    if sec is None or not is_double_normal(K, g, tol):
        raise GeometryError("geodesic is not a double normal")
    sa = K.param_of(g.point_vec(sec.t_lo))
    sb = K.param_of(g.point_vec(sec.t_hi))
    P = K.period
    chains = []
    for s0, s1 in ((sa, sb), (sb, sa)):
        end = s1 if s1 > s0 else s1 + P
        ss = list(np.linspace(s0, end, m))
        corners = [c + k * P for c in K.corner_params() for k in (0, 1) if s0 + 1e-12 < c + k * P < end - 1e-12]
        pts = sorted([(s, 1) for s in ss[1:-1]] + [(c, -1) for c in corners] + [(c, 1) for c in corners])
        raw = [(s, _member_angle(K, g, s % P, side)) for s, side in pts]
        a0 = _endpoint_angle(K, g, s0 % P, 1)
        a1 = _endpoint_angle(K, g, s1 % P, -1)
        prof = [(s0, a0)] + raw + [(end, a1)]
        if prof[0][1] > math.pi / 2:
            prof = [(s, math.pi - a) for s, a in prof]
        chains.append(prof)
    return chains


def _member_angle(K, g, s, side):
    x = K.point_param(s)
    member = perpendicular_through(g, x)
    d = member.tangent_at(x)
    t = K.tangent_vec(s, side)
    return math.acos(min(1.0, max(-1.0, minner(d, t))))


def _endpoint_angle(K, g, s, side):
    x = K.point_param(s)
    member = perpendicular_through(g, x)
    d = member.tangent_at(x)
    if K.is_corner_param(s, 1e-9):
        c = min(K.corner_params(), key=lambda c: abs(((s - c + 0.5 * K.period) % K.period) - 0.5 * K.period))
        tm, tp = K.tangent_vec(c, -1), K.tangent_vec(c, 1)
        # the perpendicular supports K at the foot, so g's direction is a normal there
        gd = g.tangent_at(x)
        if _in_normal_cone(gd, tm, tp) or _in_normal_cone(-gd, tm, tp):
            return 0.0 if minner(d, tp) > 0 else math.pi
    return math.acos(min(1.0, max(-1.0, minner(d, K.tangent_vec(s, side)))))


@dataclass
class CheckReport:
    trials: int
    violations: int
    margin: float

    def to_json(self):
        return {"trials": self.trials, "violations": self.violations, "margin": self.margin}


def normals_intersect_check(K: Body, trials: int = 1000, seed: int = 0, tol=GEOM_TOL) -> CheckReport:
    """Random pairs of boundary normals: do they meet inside ``K``?  ``margin`` is the smallest ``-gauge``."""
    rng = np.random.default_rng(seed)
    viol, margin = 0, math.inf
    for _ in range(trials):
        s1, s2 = rng.uniform(0, K.period, 2)
        n1, n2 = K.sample_param(s1).normal, K.sample_param(s2).normal
        if n1.same_line(n2):
            margin = min(margin, 0.0)
            continue
        q = intersect(n1, n2)
        if q is None:
            viol += 1
            continue
        h = K.gauge(q)
        margin = min(margin, -h)
        if h > tol:
            viol += 1
    return CheckReport(trials, viol, margin)


def random_interior_points(K: Body, n: int, rng) -> np.ndarray:
    P, _ = K.dense
    idx = rng.integers(0, len(P), n)
    lam = rng.uniform(0, 1, n)[:, None] ** 0.5
    X = (1 - lam) * K.interior_point.vec + lam * P[idx] * 0.999
    return X / np.sqrt(X[:, :1] ** 2 - X[:, 1:2] ** 2 - X[:, 2:] ** 2)


def normal_field_covers(K: Body, trials: int = 200, m: int | None = None, refine=True, seed: int = 0) -> CheckReport:
    """Nearest boundary points of random interior points see them along a normal.

    ``margin`` is the worst angular deviation from perpendicularity; with
    ``m`` set the nearest point is searched among ``m`` samples only.
    """
    rng = np.random.default_rng(seed)
    X = random_interior_points(K, trials, rng)
    if m is not None:
        S = np.array([s for s, _, _ in K._sample_plan(m, True)]) % K.period
        Pm = K.points_param(S)
    worst = 0.0
    for x in X:
        if m is None:
            s, _ = K.nearest_boundary(x, refine=refine)
        else:
            s = float(S[kernels.nearest_index(Pm, x)])
        y = K.point_param(s)
        v = x + minner(x, y) * y
        v = normalize_spacelike(v)
        if K.is_corner_param(s, 1e-9):
            tm, tp = K.tangent_vec(s, -1), K.tangent_vec(s, 1)
            dev = 0.0 if _in_normal_cone(-v, tm, tp, 1e-9) else abs(math.asin(min(1.0, abs(minner(v, tp)))))
        else:
            dev = abs(math.pi / 2 - math.acos(min(1.0, max(-1.0, minner(v, K.tangent_vec(s))))))
        worst = max(worst, dev)
    return CheckReport(trials, int(worst > 1e-6), worst)


def to_json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
