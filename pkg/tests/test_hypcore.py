import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyptom.hypcore import (
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
    parse_point,
    reflect,
    rotate_about,
    to_model,
    uhp,
)
from hyptom.geodesics import geodesic_through

from conftest import geodesics, hpoints, isometries


def uhp_dist(z, w):
    # independent route: the half-plane distance formula
    return math.acosh(1 + abs(z - w) ** 2 / (2 * z.imag * w.imag))


def on_sheet(p, tol=1e-9):
    return abs(mink_inner(p, p) + 1) < tol and p.x0 >= 1 - tol


def test_mink_inner_examples():
    assert mink_inner(ORIGIN, ORIGIN) == -1.0
    q = HPoint(math.cosh(1), math.sinh(1), 0.0)
    assert mink_inner(ORIGIN, q) == pytest.approx(-math.cosh(1), abs=1e-15)
    assert mink_inner(ORIGIN, q) == pytest.approx(-1.5430806, abs=1e-7)


@given(hpoints())
def test_self_inner_is_minus_one(p):
    assert mink_inner(p, p) == pytest.approx(-1, abs=1e-9)


def test_dist_examples():
    assert dist(uhp(0, 1), uhp(0, math.e)) == pytest.approx(1.0, abs=1e-12)
    assert dist(ORIGIN, ORIGIN) == 0.0
    d = dist(disc(0, 0), disc(0.5, 0))
    assert d == pytest.approx(math.log(3), abs=1e-12)
    assert d == pytest.approx(1.0986123, abs=1e-7)
    z = complex(*_uhp(disc(0, 0)))
    w = complex(*_uhp(disc(0.5, 0)))
    assert d == pytest.approx(uhp_dist(z, w), abs=1e-12)


def _uhp(p):
    m = to_model(p, "uhp")
    return m.u, m.v


@given(hpoints(), hpoints())
def test_dist_matches_half_plane_formula(p, q):
    z, w = complex(*_uhp(p)), complex(*_uhp(q))
    assert dist(p, q) == pytest.approx(uhp_dist(z, w), abs=1e-7, rel=1e-8)


@given(hpoints(), hpoints(), hpoints())
def test_triangle_inequality(p, q, r):
    assert dist(p, r) <= dist(p, q) + dist(q, r) + 1e-9


@given(hpoints())
def test_dist_symmetric_and_zero(p):
    assert dist(p, p) < 1e-7
    q = uhp(0.3, 0.7)
    assert dist(p, q) == pytest.approx(dist(q, p), abs=1e-12)


def test_model_anchors():
    assert from_model(ModelPoint("disc", 0, 0)) == ORIGIN
    assert from_model(ModelPoint("uhp", 0, 1)) == ORIGIN
    m = to_model(uhp(0, math.e), "disc")
    assert (m.u, m.v) == pytest.approx((math.tanh(0.5), 0.0), abs=1e-12)


@pytest.mark.parametrize("model", ["disc", "uhp", "klein"])
@given(p=hpoints())
def test_model_round_trip(model, p):
    mp = to_model(p, model)
    back = to_model(from_model(mp), model)
    assert (back.u, back.v) == pytest.approx((mp.u, mp.v), abs=1e-12)


@given(st.floats(-0.95, 0.95), st.floats(-0.95, 0.95))
def test_disc_to_klein_closed_form(u, v):
    r2 = u * u + v * v
    if r2 >= 0.95:
        return
    k = to_model(disc(u, v), "klein")
    # Klein = 2w / (1 + |w|^2)
    assert (k.u, k.v) == pytest.approx((2 * u / (1 + r2), 2 * v / (1 + r2)), abs=1e-12)


@pytest.mark.parametrize(
    "mp",
    [ModelPoint("disc", 1.0, 0.0), ModelPoint("klein", 0.8, 0.7), ModelPoint("uhp", 1.0, 0.0), ModelPoint("uhp", 0.0, -1.0)],
)
def test_from_model_rejects_out_of_domain(mp):
    with pytest.raises(GeometryError):
        from_model(mp)


def test_unknown_model_rejected():
    with pytest.raises(GeometryError):
        ModelPoint("sphere", 0, 0)


def test_model_point_json():
    mp = ModelPoint("uhp", 0.25, 2.0)
    assert ModelPoint.from_json(mp.to_json()) == mp
    assert mp.to_json() == {"model": "uhp", "u": 0.25, "v": 2.0}


def test_parse_point():
    assert parse_point("uhp:0,1") == ORIGIN
    assert dist(parse_point("disc: 0.5, 0"), disc(0.5, 0)) < 1e-12
    with pytest.raises(GeometryError):
        parse_point("uhp0,1")


@given(geodesics(), hpoints())
def test_reflect_involution(g, p):
    q = reflect(g, reflect(g, p))
    assert dist(p, q) < 1e-6
    assert on_sheet(reflect(g, p))


@given(geodesics(), hpoints(), hpoints())
def test_reflect_is_isometry(g, p, q):
    assert dist(reflect(g, p), reflect(g, q)) == pytest.approx(dist(p, q), abs=1e-7)


def test_reflect_fixes_line():
    g = geodesic_through(uhp(0, 1), uhp(0, 2))
    for y in (0.3, 1.0, 4.0):
        p = uhp(0, y)
        assert dist(reflect(g, p), p) < 1e-9
    assert dist(reflect(g, uhp(1, 1)), uhp(-1, 1)) < 1e-9


@given(hpoints(), st.floats(0, 2 * math.pi), hpoints())
def test_rotate_about(c, alpha, p):
    q = rotate_about(c, alpha, p)
    assert on_sheet(q)
    assert dist(c, q) == pytest.approx(dist(c, p), abs=1e-7)
    assert dist(rotate_about(c, alpha, c), c) < 1e-6


@given(hpoints(), hpoints())
def test_rotation_examples(c, p):
    assert dist(rotate_about(c, 0.0, p), p) < 1e-7
    q = p
    for _ in range(3):
        q = rotate_about(c, 2 * math.pi / 3, q)
    assert dist(q, p) < 1e-6


@given(isometries(), hpoints(), hpoints())
def test_isometries_preserve_dist(g, p, q):
    assert dist(g(p), g(q)) == pytest.approx(dist(p, q), abs=1e-7)
    assert on_sheet(g(p))
    assert dist(g.inverse()(g(p)), p) < 1e-6


def test_rotation_orientation():
    assert Isometry.rotation_about(uhp(1, 2), 0.4).orientation == 1
    assert Isometry.reflection(np.array([0.0, 0.0, 1.0])).orientation == -1


def test_boost_to():
    c = uhp(0.5, 2.0)
    assert dist(Isometry.boost_to(c)(ORIGIN), c) < 1e-12
