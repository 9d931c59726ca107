import math
import re

import numpy as np
import pytest
from hypothesis import given

from hyptom.constructions import disc, reuleaux
from hyptom.geodesics import foot, geodesic_through, line_at_angle, perpendicular_at
from hyptom.hypcore import ORIGIN, uhp
from hyptom.render import SCALE, SIZE, geodesic_path, ideal_endpoints, render_svg

from conftest import geodesics

AXIS = geodesic_through(uhp(0, 1), uhp(0, 2))
CROSS = perpendicular_at(AXIS, uhp(0, 1))


def _screen(u, v):
    return np.array([SIZE / 2 + SCALE * u, SIZE / 2 - SCALE * v])


def svg_arc_center(x1, y1, rx, fa, fs, x2, y2):
    """Center of an SVG circular arc from its endpoint parametrization."""
    mx, my = (x1 - x2) / 2, (y1 - y2) / 2
    num = rx * rx - mx * mx - my * my
    k = math.sqrt(max(0.0, num / (mx * mx + my * my)))
    if fa == fs:
        k = -k
    cx, cy = k * my, -k * mx
    return cx + (x1 + x2) / 2, cy + (y1 + y2) / 2


def test_diameter_is_straight_chord():
    d = geodesic_path(line_at_angle(ORIGIN, 0.3))
    assert " L " in d and " A " not in d


def test_ideal_endpoints_on_circle():
    A, B = ideal_endpoints(CROSS)
    assert np.hypot(*A) == pytest.approx(1.0) and np.hypot(*B) == pytest.approx(1.0)


@given(geodesics())
def test_arc_passes_through_geodesic(g):
    d = geodesic_path(g)
    if " L " in d:
        return
    m = re.match(r"M (\S+) (\S+) A (\S+) (\S+) 0 (\d) (\d) (\S+) (\S+)", d)
    x1, y1, rx, _, fa, fs, x2, y2 = (float(v) for v in m.groups())
    if rx > 1e5 or math.hypot(x1 - x2, y1 - y2) < 1.0:
        return  # nearly straight or nearly ideal: too ill-conditioned at 4 decimals
    cx, cy = svg_arc_center(x1, y1, rx, int(fa), int(fs), x2, y2)
    # the drawn arc is the short arc; its middle must be the geodesic's point nearest the origin
    a1 = math.atan2(y1 - cy, x1 - cx)
    a2 = math.atan2(y2 - cy, x2 - cx)
    # SVG sweep 1 increases the screen angle
    span = (a2 - a1) % (2 * math.pi) if int(fs) == 1 else -((a1 - a2) % (2 * math.pi))
    mid = a1 + span / 2
    p = foot(ORIGIN, g).vec
    target = _screen(p[1] / (1 + p[0]), p[2] / (1 + p[0]))
    got = np.array([cx + rx * math.cos(mid), cy + rx * math.sin(mid)])
    assert np.linalg.norm(got - target) < 0.05 * max(1.0, rx / 50)


def test_render_contents(reuleaux_body):
    svg = render_svg(reuleaux_body, [AXIS, CROSS])
    assert svg.startswith("<svg") and svg.endswith("</svg>\n")
    assert svg.count("<path") == 2
    assert svg.count('stroke="#d9822b"') == 2  # projections
    assert svg.count('stroke="#b0202a"') == 2  # sections
    assert "<circle" in svg and "<polygon" in svg


def test_render_body_alone():
    svg = render_svg(disc(ORIGIN, 0.8), [])
    assert "<path" not in svg and "<polygon" in svg


def test_render_deterministic(reuleaux_body):
    assert render_svg(reuleaux_body, [AXIS, CROSS]) == render_svg(reuleaux(), [AXIS, CROSS])


def test_body_outline_in_disc_view():
    svg = render_svg(disc(ORIGIN, 1.0), [], n_boundary=64)
    pts = re.search(r'<polygon points="([^"]+)"', svg).group(1).split()
    r = math.tanh(0.5) * SCALE
    for p in pts:
        x, y = (float(v) for v in p.split(","))
        assert math.hypot(x - SIZE / 2, y - SIZE / 2) == pytest.approx(r, abs=1e-3)
