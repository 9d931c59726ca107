"""Deterministic SVG figures in the Poincare disc view."""

from __future__ import annotations

import math

import numpy as np

from .bodies import Body
from .geodesics import Geodesic
from .hypcore import disc_coords
from .tomography import projection, section

SIZE = 600
SCALE = 280.0


def _xy(u, v):
    return SIZE / 2 + SCALE * u, SIZE / 2 - SCALE * v


def _fmt(x):
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _pt(u, v):
    x, y = _xy(u, v)
    return f"{_fmt(x)},{_fmt(y)}"


def _polyline(P, closed=False):
    D = disc_coords(P)
    pts = " ".join(_pt(u, v) for u, v in D)
    tag = "polygon" if closed else "polyline"
    return pts, tag


def ideal_endpoints(g: Geodesic):
    """Disc coordinates of the two ends of ``g`` on the unit circle."""
    a = g.c - g.u
    b = g.c + g.u
    return a[1:] / a[0], b[1:] / b[0]


def geodesic_path(g: Geodesic) -> str:
    """SVG path data for ``g``: a chord through the center or an arc orthogonal to the unit circle."""
    A, B = ideal_endpoints(g)
    ax, ay = _xy(*A)
    bx, by = _xy(*B)
    dot = float(A @ B)
    if abs(1 + dot) < 1e-9 or abs(A[0] * B[1] - A[1] * B[0]) < 1e-12:
        return f"M {_fmt(ax)} {_fmt(ay)} L {_fmt(bx)} {_fmt(by)}"
    C = (A + B) / (1 + dot)
    r = math.sqrt(max(0.0, C @ C - 1.0)) * SCALE
    cx, cy = _xy(*C)
    # the arc inside the disc is the short one about C; pick its screen direction
    cross = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    sweep = 1 if cross > 0 else 0
    return f"M {_fmt(ax)} {_fmt(ay)} A {_fmt(r)} {_fmt(r)} 0 0 {sweep} {_fmt(bx)} {_fmt(by)}"


def _segment(g: Geodesic, t0, t1, n=64):
    return g.points(np.linspace(t0, t1, n))


def render_svg(K: Body | None, geodesics=(), n_boundary=512, title=None) -> str:
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        lines.append(f"  <title>{title}</title>")
    c = _fmt(SIZE / 2)
    lines.append(f'  <circle cx="{c}" cy="{c}" r="{_fmt(SCALE)}" fill="none" stroke="#000000" stroke-width="1"/>')
    if K is not None:
        S = np.array([s for s, _, _ in K._sample_plan(n_boundary, True)]) % K.period
        pts, tag = _polyline(K.points_param(np.unique(S)), closed=True)
        lines.append(f'  <{tag} points="{pts}" fill="#dde6f5" stroke="#1f4e9c" stroke-width="1.5"/>')
    for g in geodesics:
        lines.append(f'  <path d="{geodesic_path(g)}" fill="none" stroke="#555555" stroke-width="1"/>')
        if K is None:
            continue
        pr = projection(K, g)
        pts, _ = _polyline(_segment(g, pr.t_lo, pr.t_hi))
        lines.append(f'  <polyline points="{pts}" fill="none" stroke="#d9822b" stroke-width="5" stroke-opacity="0.7"/>')
        sec = section(K, g)
        if sec is not None:
            pts, _ = _polyline(_segment(g, sec.t_lo, sec.t_hi))
            lines.append(f'  <polyline points="{pts}" fill="none" stroke="#b0202a" stroke-width="2"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
