"""Points of the hyperbolic plane in the hyperboloid model.

All geometry is done on the upper sheet of ``-x0^2 + x1^2 + x2^2 = -1``.
The Poincare disc, upper half-plane and Beltrami-Klein models are views,
reached through :func:`to_model` and :func:`from_model`.

The upper half-plane is glued to the disc by the Cayley map
``w = (z - i) / (z + i)``, so ``uhp(0, 1)`` is the hyperboloid apex
``(1, 0, 0)`` and the imaginary axis of the half-plane lands on the real
axis of the disc, with ``uhp(0, e)`` at ``disc(tanh(1/2), 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

ALG_TOL = 1e-12
GEOM_TOL = 1e-9
BODY_TOL = 1e-6

MODELS = ("disc", "uhp", "klein")

J = np.diag([-1.0, 1.0, 1.0])
_JD = np.array([-1.0, 1.0, 1.0])


class GeometryError(ValueError):
    """Raised for degenerate or out-of-domain geometric input."""


def minner(a, b) -> float:
    """Minkowski product of two 3-vectors with signature (-, +, +)."""
    return float(-a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def mcross(a, b) -> np.ndarray:
    """Minkowski cross product: orthogonal to ``a`` and ``b`` under :func:`minner`."""
    return _JD * np.cross(a, b)


def normalize_timelike(v) -> np.ndarray:
    """Scale ``v`` onto the upper sheet of the hyperboloid."""
    v = np.asarray(v, dtype=float)
    q = -minner(v, v)
    if q <= 0:
        raise GeometryError("vector is not timelike")
    v = v / math.sqrt(q)
    return v if v[0] > 0 else -v


def normalize_spacelike(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    q = minner(v, v)
    if q <= 0:
        raise GeometryError("vector is not spacelike")
    return v / math.sqrt(q)


@dataclass(frozen=True)
class HPoint:
    """A point of H^2 as a unit timelike vector ``(x0, x1, x2)``."""

    x0: float
    x1: float
    x2: float

    @classmethod
    def from_vec(cls, v, renormalize=True) -> "HPoint":
        if renormalize:
            v = normalize_timelike(v)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @cached_property
    def vec(self) -> np.ndarray:
        v = np.array([self.x0, self.x1, self.x2])
        v.flags.writeable = False
        return v

    def __iter__(self):
        return iter((self.x0, self.x1, self.x2))


ORIGIN = HPoint(1.0, 0.0, 0.0)


def _vec(p) -> np.ndarray:
    return p.vec if isinstance(p, HPoint) else np.asarray(p, dtype=float)


def mink_inner(p, q) -> float:
    return minner(_vec(p), _vec(q))


def dist(p, q) -> float:
    """Hyperbolic distance.

    Close points use ``2 asinh(|p - q| / 2)``, which keeps full relative
    accuracy where arccosh of the inner product loses half the digits.
    """
    a, b = _vec(p), _vec(q)
    ch = -minner(a, b)
    if ch > 2.0:
        return math.acosh(ch)
    d = a - b
    return 2.0 * math.asinh(0.5 * math.sqrt(max(0.0, minner(d, d))))


def dist_many(P: np.ndarray, q) -> np.ndarray:
    """Distances from each row of ``P`` to ``q``."""
    q = _vec(q)
    ch = -(P @ (_JD * q))
    D = P - q
    s2 = np.maximum(0.0, (D * D) @ _JD)
    near = 2.0 * np.arcsinh(0.5 * np.sqrt(s2))
    return np.where(ch > 2.0, np.arccosh(np.maximum(ch, 1.0)), near)


# -- models -----------------------------------------------------------------


@dataclass(frozen=True)
class ModelPoint:
    model: str
    u: float
    v: float

    def __post_init__(self):
        if self.model not in MODELS:
            raise GeometryError(f"unknown model {self.model!r}")

    def to_json(self) -> dict:
        return {"model": self.model, "u": self.u, "v": self.v}

    @classmethod
    def from_json(cls, obj: dict) -> "ModelPoint":
        return cls(str(obj["model"]), float(obj["u"]), float(obj["v"]))


def disc(u, v) -> HPoint:
    return from_model(ModelPoint("disc", u, v))


def uhp(u, v) -> HPoint:
    return from_model(ModelPoint("uhp", u, v))


def klein(u, v) -> HPoint:
    return from_model(ModelPoint("klein", u, v))


def _disc_to_vec(u, v):
    r2 = u * u + v * v
    d = 1.0 - r2
    return np.array([(1.0 + r2) / d, 2.0 * u / d, 2.0 * v / d])


def _uhp_to_disc(u, v):
    z = complex(u, v)
    w = (z - 1j) / (z + 1j)
    return w.real, w.imag


def _disc_to_uhp(u, v):
    w = complex(u, v)
    z = 1j * (1 + w) / (1 - w)
    return z.real, z.imag


def from_model(mp: ModelPoint) -> HPoint:
    u, v = mp.u, mp.v
    if mp.model == "uhp":
        if not v > 0:
            raise GeometryError("upper half-plane point needs v > 0")
        u, v = _uhp_to_disc(u, v)
        vec = _disc_to_vec(u, v)
    elif mp.model == "disc":
        if not u * u + v * v < 1:
            raise GeometryError("disc point must lie inside the unit disc")
        vec = _disc_to_vec(u, v)
    else:
        r2 = u * u + v * v
        if not r2 < 1:
            raise GeometryError("Klein point must lie inside the unit disc")
        x0 = 1.0 / math.sqrt(1.0 - r2)
        vec = np.array([x0, u * x0, v * x0])
    return HPoint.from_vec(vec)


def to_model(p, model: str) -> ModelPoint:
    x0, x1, x2 = _vec(p)
    if model == "klein":
        return ModelPoint("klein", x1 / x0, x2 / x0)
    du, dv = x1 / (1.0 + x0), x2 / (1.0 + x0)
    if model == "disc":
        return ModelPoint("disc", du, dv)
    if model == "uhp":
        return ModelPoint("uhp", *_disc_to_uhp(du, dv))
    raise GeometryError(f"unknown model {model!r}")


def disc_coords(P: np.ndarray) -> np.ndarray:
    """Poincare disc coordinates of the rows of ``P`` (shape ``(N, 2)``)."""
    P = np.atleast_2d(P)
    return P[:, 1:] / (1.0 + P[:, :1])


def parse_point(text: str) -> HPoint:
    """Parse ``"model:u,v"`` as used on the command line."""
    try:
        model, rest = text.split(":", 1)
        u, v = (float(s) for s in rest.split(","))
    except ValueError as exc:
        raise GeometryError(f"cannot parse point {text!r}; expected model:u,v") from exc
    return from_model(ModelPoint(model.strip(), u, v))


# -- isometries -------------------------------------------------------------


class Isometry:
    """A Lorentz matrix preserving the upper sheet."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        m.flags.writeable = False
        self.matrix = m

    def __matmul__(self, other):
        if isinstance(other, Isometry):
            return Isometry(self.matrix @ other.matrix)
        return NotImplemented

    def __call__(self, p):
        return self.apply(p)

    def apply(self, p) -> HPoint:
        return HPoint.from_vec(self.matrix @ _vec(p))

    def apply_vec(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=float)

    def apply_many(self, P: np.ndarray) -> np.ndarray:
        return P @ self.matrix.T

    def inverse(self) -> "Isometry":
        return Isometry(J @ self.matrix.T @ J)

    @property
    def orientation(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0 else -1

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3))

    @classmethod
    def boost_to(cls, c) -> "Isometry":
        """The pure translation taking the apex to ``c``."""
        c = _vec(c)
        s = c[1:]
        m = np.empty((3, 3))
        m[0, 0] = c[0]
        m[0, 1:] = s
        m[1:, 0] = s
        m[1:, 1:] = np.eye(2) + np.outer(s, s) / (1.0 + c[0])
        return cls(m)

    @classmethod
    def rotation(cls, alpha: float) -> "Isometry":
        ca, sa = math.cos(alpha), math.sin(alpha)
        return cls([[1, 0, 0], [0, ca, -sa], [0, sa, ca]])

    @classmethod
    def rotation_about(cls, c, alpha: float) -> "Isometry":
        b = cls.boost_to(c)
        return b @ cls.rotation(alpha) @ b.inverse()

    @classmethod
    def reflection(cls, n) -> "Isometry":
        """Reflection in the geodesic with unit spacelike normal ``n``."""
        n = np.asarray(n, dtype=float)
        return cls(np.eye(3) - 2.0 * np.outer(n, _JD * n))

    @classmethod
    def point_reflection(cls, c) -> "Isometry":
        return cls.rotation_about(c, math.pi)

    @classmethod
    def random(cls, rng: np.random.Generator, max_shift=1.0, reflect=False) -> "Isometry":
        r = max_shift * math.sqrt(rng.uniform())
        phi = rng.uniform(0, 2 * math.pi)
        c = np.array([math.cosh(r), math.sinh(r) * math.cos(phi), math.sinh(r) * math.sin(phi)])
        iso = cls.boost_to(c) @ cls.rotation(rng.uniform(0, 2 * math.pi))
        if reflect and rng.uniform() < 0.5:
            iso = iso @ cls(np.diag([1.0, 1.0, -1.0]))
        return iso


def reflect(g, p) -> HPoint:
    n = g.n
    v = _vec(p)
    return HPoint.from_vec(v - 2.0 * minner(v, n) * n)


def rotate_about(c, alpha: float, p) -> HPoint:
    return Isometry.rotation_about(c, alpha).apply(p)


def frame_at(p) -> np.ndarray:
    """Columns: ``p`` and an oriented orthonormal tangent frame at ``p``."""
    return Isometry.boost_to(p).matrix


def exp_point(p, theta: float, r: float) -> HPoint:
    """The point at distance ``r`` from ``p`` in direction ``theta`` of ``frame_at(p)``."""
    F = frame_at(p)
    return HPoint.from_vec(F @ np.array([math.cosh(r), math.sinh(r) * math.cos(theta), math.sinh(r) * math.sin(theta)]))


def direction_at(frame: np.ndarray, theta: float) -> np.ndarray:
    return frame @ np.array([0.0, math.cos(theta), math.sin(theta)])
