"""Builders for the standard bodies and reconstruction from projection lengths."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import ConvexHull

from .bodies import ArcBody, Body, HalfPlaneBody, RadialBody, slab_planes
from .geodesics import Geodesic, geodesic_through, intersect, line_at_angle
from .hypcore import ORIGIN, GeometryError, HPoint, Isometry, _vec, dist, exp_point, rotate_about, uhp
from .tomography import Pencil, projection, projection_lengths

ODD_GRID = 4096


def disc(center=ORIGIN, r: float = 1.0) -> RadialBody:
    if not r > 0:
        raise GeometryError("disc radius must be positive")
    return RadialBody.from_fourier(center, r, check=False)


# -- Reuleaux triangle -------------------------------------------------------


@dataclass(frozen=True)
class ReuleauxSpec:
    center: HPoint = ORIGIN
    circumradius: float = 1.0
    direction: float = 0.0

    def __post_init__(self):
        if not self.circumradius > 0:
            raise GeometryError("circumradius must be positive")


def reuleaux_vertices(spec: ReuleauxSpec) -> list[HPoint]:
    v0 = exp_point(spec.center, spec.direction, spec.circumradius)
    return [v0, rotate_about(spec.center, 2 * math.pi / 3, v0), rotate_about(spec.center, 4 * math.pi / 3, v0)]


def reuleaux(spec: ReuleauxSpec = ReuleauxSpec()) -> ArcBody:
    """Three discs centered at an equilateral triangle's vertices, radius the side length.

    With the default spec (center at the apex, i.e. ``uhp(0, 1)``,
    circumradius 1) the first vertex is ``uhp(0, e)``.
    """
    v = reuleaux_vertices(spec)
    s = dist(v[0], v[1])
    return ArcBody([(x, s) for x in v], spec.center)


# -- odd functions, slabs and radial perturbations ---------------------------


def fourier_function(coeffs):
    """``theta -> sum(a_k cos k theta + b_k sin k theta)`` from ``[(k, a_k, b_k), ...]``."""
    coeffs = [(float(k), float(a), float(b)) for k, a, b in coeffs]

    def f(theta):
        theta = np.asarray(theta, float)
        out = np.zeros_like(theta)
        for k, a, b in coeffs:
            out = out + a * np.cos(k * theta) + b * np.sin(k * theta)
        return out

    return f


def check_odd(f, n=ODD_GRID, tol=1e-12):
    th = np.linspace(0, 2 * np.pi, n, endpoint=False)
    worst = float(np.max(np.abs(f(th + np.pi) + f(th))))
    if worst >= tol:
        raise GeometryError(f"function is not odd under theta -> theta + pi (defect {worst:.3g})")
    return worst


def slab_body(r0: float, eps: float, f, m: int = 180, center=ORIGIN, tol=1e-4) -> HalfPlaneBody:
    """Intersection of ``m`` slabs: on the pencil line at angle ``u`` the slab covers ``[-r0, r0] + eps f(u)``."""
    if not 0 < r0:
        raise GeometryError("r0 must be positive")
    if callable(f):
        fn = f
    else:
        fn = fourier_function(f)
    check_odd(fn)
    center = HPoint.from_vec(_vec(center))
    planes, lines, shifts = [], [], []
    for k in range(m):
        u = math.pi * k / m
        L = line_at_angle(center, u)
        d = eps * float(fn(np.array([u]))[0])
        planes.extend(slab_planes(L, -r0 + d, r0 + d))
        lines.append(L)
        shifts.append(d)
    try:
        K = HalfPlaneBody(planes, center)
    except GeometryError as exc:
        raise GeometryError(f"epsilon too large: {exc}") from exc
    for L, d in zip(lines, shifts):
        pr = projection(K, L)
        if abs(pr.length - 2 * r0) > tol:
            raise GeometryError("epsilon too large: slabs no longer realize their own projections")
    return K


def perturbed_radial(c: float, eps: float, f, center=ORIGIN, check=True) -> RadialBody:
    """Radial body ``rho = c + eps f``; ``f`` is a callable or Fourier list ``[(k, a_k, b_k), ...]``."""
    if not c > 0:
        raise GeometryError("c must be positive")
    th = np.linspace(0, 2 * np.pi, ODD_GRID, endpoint=False)
    if callable(f):
        vals = c + eps * f(th)
        if vals.min() <= 0:
            raise GeometryError("radial function must stay positive")
        return RadialBody.from_function(center, lambda t: c + eps * f(t), check=check)
    if (c + eps * fourier_function(f)(th)).min() <= 0:
        raise GeometryError("radial function must stay positive")
    return RadialBody.from_fourier(center, c, eps, f, check=check)


# -- polygon pairs with equal pencil projections ------------------------------


@dataclass
class GardnerReport:
    max_row_diff: float
    outside_rows: int
    outside_bitwise_equal: bool
    congruence_residual: float
    rows: int
    tol: float = 1e-6

    @property
    def equal_projections(self) -> bool:
        return self.max_row_diff < self.tol

    @property
    def non_congruent(self) -> bool:
        return self.congruence_residual > 1e-3

    def to_json(self):
        return {
            "max_row_diff": self.max_row_diff,
            "rows": self.rows,
            "outside_rows": self.outside_rows,
            "outside_bitwise_equal": self.outside_bitwise_equal,
            "congruence_residual": self.congruence_residual,
            "equal_projections": self.equal_projections,
            "non_congruent": self.non_congruent,
        }


def _klein(P):
    P = np.atleast_2d(P)
    return P[:, 1:] / P[:, :1]


def _from_klein(k):
    k = np.atleast_2d(k)
    x0 = 1.0 / np.sqrt(1.0 - (k**2).sum(axis=1))
    return np.column_stack([x0, k[:, 0] * x0, k[:, 1] * x0])


def _ray_exit(Kk, d):
    """Klein radius where the ray from the origin in direction ``d`` leaves the polygon ``Kk``."""
    best = math.inf
    n = len(Kk)
    for i in range(n):
        a, b = Kk[i], Kk[(i + 1) % n]
        M = np.column_stack([d, a - b])
        if abs(np.linalg.det(M)) < 1e-300:
            continue
        lam, mu = np.linalg.solve(M, a)
        if lam > 0 and -1e-12 <= mu <= 1 + 1e-12:
            best = min(best, lam)
    return best


def gardner_pair(p, base: HalfPlaneBody, g1: Geodesic, g2: Geodesic, tol=1e-9):
    """Swap the two opposite parts of ``base`` inside the double wedge bounded by ``g1``, ``g2``.

    Both lines pass through ``p``.  The part of ``base`` in the wedge
    (and in its opposite) is replaced by its point reflection about ``p``;
    the rest is kept vertex for vertex.  The gluing requires ``base`` to be
    bisected by ``p`` along ``g1`` and ``g2`` and the result to be convex,
    otherwise ``GeometryError("cap not reflectable")`` is raised.
    """
    p = HPoint.from_vec(_vec(p))
    if not (g1.contains(p) and g2.contains(p)):
        raise GeometryError("both lines must pass through the pencil point")
    B = Isometry.boost_to(p)
    Binv = B.inverse()
    V = base.vertices
    Vk = _klein(Binv.apply_many(V))
    d1 = Binv.apply_vec(g1.tangent_at(p))[1:]
    d2 = Binv.apply_vec(g2.tangent_at(p))[1:]
    a1 = math.atan2(d1[1], d1[0])
    span = (math.atan2(d2[1], d2[0]) - a1) % math.pi
    if span < 1e-12:
        raise GeometryError("wedge lines coincide")

    def in_wedge(k):
        ang = (math.atan2(k[1], k[0]) - a1) % math.pi
        return 1e-12 < ang < span - 1e-12

    rays = []
    for ang in (a1, a1 + span):
        d = np.array([math.cos(ang), math.sin(ang)])
        r_plus, r_minus = _ray_exit(Vk, d), _ray_exit(Vk, -d)
        if abs(r_plus - r_minus) > tol:
            raise GeometryError("cap not reflectable: base is not bisected by the pencil point on the wedge lines")
        rays.extend([r_plus * d, -r_minus * d])
    pts, src = [], []
    for i, k in enumerate(Vk):
        if in_wedge(k):
            pts.append(-k)
            src.append(("flip", i))
        else:
            pts.append(k)
            src.append(("keep", i))
    for r in rays:
        pts.append(r)
        src.append(("ray", None))
    pts = np.array(pts)
    hull = ConvexHull(pts)
    eq = hull.equations
    for k in pts:
        if np.min(np.abs(eq[:, :2] @ k + eq[:, 2])) > 1e-10:
            raise GeometryError("cap not reflectable: reflected chain breaks convexity")
    sig = Isometry.point_reflection(p)
    out = []
    for idx in hull.vertices:
        kind, i = src[idx]
        if kind == "keep":
            out.append(V[i])
        elif kind == "flip":
            w = sig.apply_vec(V[i])
            # reuse an existing vertex when the reflection lands on one, keeping its bits
            j = int(np.argmin(np.abs(V - w).max(axis=1)))
            out.append(V[j] if np.abs(V[j] - w).max() < 1e-12 else w)
        else:
            out.append(B.apply_vec(_from_klein(pts[idx])[0]))
    P2 = HalfPlaneBody.from_vertices(out, p)
    return base, P2


def gardner_fixture(n: int = 12, cap_edges=(2, 6), heights=(0.06, 0.1), wedge=(0.6, 1.5)):
    """A pair-ready setup: a centrally symmetric regular ``n``-gon about the apex with two caps.

    One cap sits inside the wedge between the two pencil lines at angles
    ``wedge``; the other lies outside the double wedge.  Returns
    ``(p, base, g1, g2)`` in the Klein-regular frame of the apex.
    """
    ang = 2 * np.pi * (np.arange(n) + 0.5) / n
    rad = 0.6
    Q = [rad * np.array([math.cos(a), math.sin(a)]) for a in ang]
    pts = list(Q)
    for e, h in zip(cap_edges, heights):
        mid = 0.5 * (Q[e] + Q[(e - 1) % n])
        pts.append(mid * (1 + h))
    pts = np.array(pts)
    hull = ConvexHull(pts)
    V = [_from_klein(pts[i])[0] for i in hull.vertices]
    base = HalfPlaneBody.from_vertices(V, ORIGIN)
    g1 = line_at_angle(ORIGIN, wedge[0])
    g2 = line_at_angle(ORIGIN, wedge[1])
    return ORIGIN, base, g1, g2


def gardner_report(p, P1: HalfPlaneBody, P2: HalfPlaneBody, g1: Geodesic, g2: Geodesic, m: int = 360, seed: int = 0) -> GardnerReport:
    p = HPoint.from_vec(_vec(p))
    pen = Pencil(p, m)
    l1 = projection_lengths(P1, p, m)
    l2 = projection_lengths(P2, p, m)
    F = Isometry.boost_to(p).inverse()
    d1 = F.apply_vec(g1.tangent_at(p))[1:]
    d2 = F.apply_vec(g2.tangent_at(p))[1:]
    a1 = math.atan2(d1[1], d1[0])
    span = (math.atan2(d2[1], d2[0]) - a1) % math.pi
    outside = []
    for k, th in enumerate(pen.angles()):
        # pencil angles are measured in the frame of boost_to(p)
        ang = (th - a1) % math.pi
        if not (0 <= ang <= span):
            outside.append(k)
    bitwise = bool(np.all(l1[outside] == l2[outside])) if outside else True
    return GardnerReport(
        float(np.max(np.abs(l1 - l2))),
        len(outside),
        bitwise,
        congruence_residual(P1, P2, seed=seed),
        m,
    )


def _hausdorff(A, B):
    G = -(A * [-1, 1, 1]) @ B.T
    D = np.arccosh(np.maximum(1.0, G))
    return max(D.min(axis=1).max(), D.min(axis=0).max())


def congruence_residual(P1: HalfPlaneBody, P2: HalfPlaneBody, n_shift=9, n_rot=72, seed: int = 0) -> float:
    """Smallest vertex-set Hausdorff distance over a grid of isometries ``g`` (then refined) of ``g P1`` to ``P2``.

    The grid is three-parameter: the image of ``P1``'s vertex centroid,
    placed on a disc around ``P2``'s centroid, and a rotation angle;
    orientation-reversing maps are included.
    """
    A, Bv = P1.vertices, P2.vertices
    c1 = HPoint.from_vec(A.sum(axis=0))
    c2 = HPoint.from_vec(Bv.sum(axis=0))
    T1 = Isometry.boost_to(c1).inverse()
    A0 = T1.apply_many(A)
    B2 = Isometry.boost_to(c2)
    radius = 0.5
    flips = [np.eye(3), np.diag([1.0, 1.0, -1.0])]

    def iso(z, flip):
        r, phi, rot = z
        c = np.array([math.cosh(r), math.sinh(r) * math.cos(phi), math.sinh(r) * math.sin(phi)])
        return B2.matrix @ Isometry.boost_to(c).matrix @ Isometry.rotation(rot).matrix @ flip

    def cost(z, flip):
        M = iso(z, flip)
        return _hausdorff(A0 @ M.T, Bv)

    cands = []
    for flip in flips:
        for r in np.linspace(0, radius, n_shift):
            for phi in np.linspace(0, 2 * np.pi, 1 if r == 0 else n_shift, endpoint=False):
                for rot in np.linspace(0, 2 * np.pi, n_rot, endpoint=False):
                    z = (r, phi, rot)
                    cands.append((cost(z, flip), z, flip))
    cands.sort(key=lambda c: c[0])
    best = cands[0][0]
    for c0, z, flip in cands[:8]:
        res = minimize(lambda w: cost(w, flip), np.array(z), method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
        best = min(best, float(res.fun))
    return best


# -- reconstruction from projection lengths -----------------------------------


@dataclass(frozen=True)
class ProjectionDatum:
    """Projection data on the pencil line at angle ``theta``.

    In the frame sending the pencil point to ``uhp(0, 1)`` and the line to the
    imaginary axis, the perpendiculars to the line are semicircles about 0;
    the two supporting ones have radii ``r < R``.  ``ell`` is the projection
    length ``ln(R / r)`` and ``ell_prime`` the length cut by the slab on the
    vertical line at Euclidean offset ``t``.
    """

    theta: float
    ell: float
    ell_prime: float
    t: float

    def __post_init__(self):
        if not (self.ell > 0 and self.ell_prime > 0 and self.t > 0):
            raise GeometryError(f"projection datum at theta={self.theta}: ell, ell_prime and t must be positive")


def forward_lengths(r: float, R: float, t: float) -> tuple[float, float]:
    if not 0 < t < r < R:
        raise GeometryError("need 0 < t < r < R")
    return math.log(R / r), 0.5 * math.log((R * R - t * t) / (r * r - t * t))


def invert_lengths(ell: float, ell_prime: float, t: float) -> tuple[float, float]:
    """``(r, R)`` from the two lengths and the offset."""
    a = math.exp(ell)
    b = math.exp(2 * ell_prime)
    if b <= a * a or b <= 1:
        raise GeometryError("inconsistent lengths")
    r2 = t * t * (b - 1) / (b - a * a)
    if not r2 > 0:
        raise GeometryError("inconsistent lengths")
    r = math.sqrt(r2)
    return r, a * r


def _line_frame(p, theta):
    return line_at_angle(p, theta)


def offset_line(L: Geodesic, t: float) -> Geodesic:
    """The vertical line ``Re z = t`` in the frame where ``L`` is the imaginary axis based at ``uhp(0, 1)``."""
    F = Isometry(np.column_stack([L.c, L.u, -L.n]))
    if F.orientation < 0:
        F = Isometry(np.column_stack([L.c, L.u, L.n]))
    # frame: apex -> L.c, +x1 -> L.u; uhp(0, y) sits at arclength ln y along +x1
    a, b = uhp(t, 1.0), uhp(t, 2.0)
    return geodesic_through(F.apply(a), F.apply(b))


def measure_projection_data(K: Body, p=ORIGIN, m: int = 180, t: float | None = None) -> list[ProjectionDatum]:
    """Measure ``(ell, ell_prime)`` on ``m`` pencil lines; ``t`` defaults to ``0.9 min r``."""
    p = HPoint.from_vec(_vec(p))
    lines = Pencil(p, m).lines()
    ranges = [K.foot_range(L) for L in lines]
    if t is None:
        t = 0.9 * min(math.exp(lo) for lo, _ in ranges)
    out = []
    for th, L, (lo, hi) in zip(Pencil(p, m).angles(), lines, ranges):
        g_lo, g_hi = slab_planes(L, lo, hi)
        Lp = offset_line(L, t)
        a, b = intersect(Lp, g_lo), intersect(Lp, g_hi)
        if a is None or b is None:
            raise GeometryError(f"offset line misses a supporting geodesic at theta={th}")
        out.append(ProjectionDatum(float(th), hi - lo, dist(a, b), t))
    return out


def reconstruct_from_projections(data, p=ORIGIN) -> HalfPlaneBody:
    """Intersection of the slabs recovered line by line from ``(ell, ell_prime, t)``."""
    p = HPoint.from_vec(_vec(p))
    planes = []
    for d in data:
        try:
            r, R = invert_lengths(d.ell, d.ell_prime, d.t)
        except GeometryError as exc:
            raise GeometryError(f"inconsistent datum on the line at theta={d.theta}: {exc}") from exc
        L = _line_frame(p, d.theta)
        planes.extend(slab_planes(L, math.log(r), math.log(R)))
    return HalfPlaneBody(planes, p)


DATUM_COLUMNS = ("theta", "ell", "ell_prime", "t")


def data_to_csv(data) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(DATUM_COLUMNS)
    for d in data:
        w.writerow([repr(d.theta), repr(d.ell), repr(d.ell_prime), repr(d.t)])
    return buf.getvalue()


def data_from_csv(text: str) -> list[ProjectionDatum]:
    rdr = csv.reader(io.StringIO(text))
    header = next(rdr, None)
    if header is None or tuple(h.strip() for h in header) != DATUM_COLUMNS:
        raise ValueError(f"line 1: expected header {','.join(DATUM_COLUMNS)}")
    out = []
    for lineno, rec in enumerate(rdr, start=2):
        if not rec or all(not x.strip() for x in rec):
            continue
        try:
            if len(rec) != 4:
                raise ValueError(f"expected 4 fields, got {len(rec)}")
            out.append(ProjectionDatum(*(float(x) for x in rec)))
        except (ValueError, GeometryError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return out
