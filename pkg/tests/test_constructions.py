import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyptom.bodies import HalfPlaneBody, radial_profile
from hyptom.constructions import (
    ProjectionDatum,
    ReuleauxSpec,
    check_odd,
    congruence_residual,
    data_from_csv,
    data_to_csv,
    disc,
    forward_lengths,
    fourier_function,
    gardner_fixture,
    gardner_pair,
    gardner_report,
    invert_lengths,
    measure_projection_data,
    offset_line,
    perturbed_radial,
    reconstruct_from_projections,
    reuleaux,
    reuleaux_vertices,
    slab_body,
)
from hyptom.geodesics import line_at_angle, intersect
from hyptom.hypcore import ORIGIN, GeometryError, Isometry, dist, exp_point, rotate_about, uhp
from hyptom.tomography import (
    Pencil,
    equichordal_defect,
    pencil_profile,
    projection,
    projection_lengths,
    random_interior_points,
    reflected_hausdorff,
    width_profile,
)

SIN = [(1, 0.0, 1.0)]
SIN3 = [(3, 0.0, 1.0)]
COS2 = [(2, 1.0, 0.0)]
# width spread of perturbed_radial(0.8, 0.05, sin 3t), frozen after an independent
# check: brute-force feet over 4e5 boundary points with finite-difference normals
# gave 0.0294553333863
SIN3_WIDTH_SPREAD = 0.029455333342631507


@pytest.fixture(scope="module")
def slab():
    return slab_body(0.7, 0.03, SIN, m=180)


@pytest.fixture(scope="module")
def gardner():
    p, base, g1, g2 = gardner_fixture()
    P1, P2 = gardner_pair(p, base, g1, g2)
    return p, P1, P2, g1, g2


# -- discs and Reuleaux ------------------------------------------------------------


def test_disc_properties():
    K = disc(uhp(0.2, 0.9), 0.6)
    assert width_profile(K, 60).spread < 1e-12
    assert equichordal_defect(K, K.center, 60) < 1e-12
    assert np.ptp(projection_lengths(K, K.center, 30)) < 1e-12
    with pytest.raises(GeometryError):
        disc(ORIGIN, 0.0)


def test_reuleaux_vertices():
    v = reuleaux_vertices(ReuleauxSpec(uhp(0, 1), 1.0))
    assert dist(v[0], uhp(0, math.e)) < 1e-12
    s = math.acosh(math.cosh(1) ** 2 + 0.5 * math.sinh(1) ** 2)
    for i in range(3):
        assert dist(v[i], v[(i + 1) % 3]) == pytest.approx(s, abs=1e-12)
        assert dist(v[i], uhp(0, 1)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(GeometryError):
        ReuleauxSpec(ORIGIN, -1.0)


def test_reuleaux_threefold_symmetry(reuleaux_body, rng):
    P = random_interior_points(disc(ORIGIN, 1.6), 1000, rng)
    for p in P:
        q = rotate_about(ORIGIN, 2 * math.pi / 3, p)
        g1, g2 = reuleaux_body.gauge(p), reuleaux_body.gauge(q)
        if abs(g1) > 1e-9:
            assert (g1 < 0) == (g2 < 0)
        assert g1 == pytest.approx(g2, abs=1e-9)


def test_reuleaux_width_increases_with_size():
    ws = [width_profile(reuleaux(ReuleauxSpec(ORIGIN, r)), 60).min_w for r in (0.2, 0.5, 1.0, 1.5, 2.0)]
    assert all(b > a for a, b in zip(ws, ws[1:]))


# -- odd functions and slabs ---------------------------------------------------------


def test_check_odd():
    assert check_odd(fourier_function([(1, 0.3, 1.0), (3, 0.2, 0.0)])) < 1e-12
    with pytest.raises(GeometryError):
        check_odd(fourier_function(COS2))


def test_slab_zero_eps_is_circumscribed_disc():
    K = slab_body(0.7, 0.0, SIN, m=90)
    bound = math.atanh(math.tanh(0.7) / math.cos(math.pi / 180)) - 0.7
    for th in np.linspace(0, 2 * math.pi, 61):
        r = radial_profile(K, ORIGIN, th)
        assert -1e-12 <= r - 0.7 <= bound + 1e-12
    assert np.allclose(projection_lengths(K, ORIGIN, 90), 1.4, atol=1e-9)


def test_slab_realizes_its_projections(slab):
    f = fourier_function(SIN)
    for k in range(0, 180, 7):
        u = math.pi * k / 180
        pr = projection(slab, line_at_angle(ORIGIN, u))
        shift = 0.03 * float(f(np.array([u]))[0])
        assert pr.t_lo == pytest.approx(-0.7 + shift, abs=1e-6)
        assert pr.t_hi == pytest.approx(0.7 + shift, abs=1e-6)


def test_slab_profile_constant_yet_asymmetric(slab):
    T = pencil_profile(slab, Pencil(ORIGIN, 360), widths=False)
    assert T.spread("projection") < 1e-4
    # asymmetry against the point-reflected body
    assert reflected_hausdorff(slab, ORIGIN, 128) > 1e-2


def test_slab_errors():
    with pytest.raises(GeometryError):
        slab_body(0.7, 0.03, COS2)
    # a first harmonic shift acts almost like a translation and stays valid a long way
    slab_body(0.7, 0.6, SIN, m=60)
    with pytest.raises(GeometryError, match="epsilon too large"):
        slab_body(0.7, 0.3, SIN3, m=60)
    with pytest.raises(GeometryError, match="epsilon too large"):
        slab_body(0.7, 1.0, SIN, m=60)
    with pytest.raises(GeometryError):
        slab_body(-1.0, 0.0, SIN)


@given(st.floats(0.3, 1.2), st.floats(-0.02, 0.02), st.floats(-1, 1))
def test_slab_profile_constant_any_odd(r0, eps, mix):
    f = [(1, mix, 1.0), (3, 0.3, -0.2 * mix)]
    K = slab_body(r0, eps, f, m=36)
    assert np.ptp(projection_lengths(K, ORIGIN, 36)) < 1e-4


# -- radial perturbations ---------------------------------------------------------------


def test_odd_perturbation_equichordal():
    K = perturbed_radial(0.8, 0.05, SIN3)
    T = pencil_profile(K, Pencil(ORIGIN, 90), "section", widths=False)
    assert np.allclose(T.column("section"), 1.6, atol=1e-9)
    assert equichordal_defect(K, ORIGIN, 90) < 1e-9


def test_sin3_width_regression():
    wp = width_profile(perturbed_radial(0.8, 0.05, SIN3), 360, refine=True)
    assert wp.spread == pytest.approx(SIN3_WIDTH_SPREAD, abs=1e-9)


def test_cos2_width_nonconstant():
    assert width_profile(perturbed_radial(0.8, 0.05, COS2), 90).spread > 0.19


def test_zero_eps_is_disc():
    K = perturbed_radial(0.8, 0.0, COS2)
    assert width_profile(K, 60).spread < 1e-12
    assert np.ptp(projection_lengths(K, ORIGIN, 30)) < 1e-12


def test_perturbed_callable_matches_fourier():
    A = perturbed_radial(0.8, 0.05, SIN3)
    B = perturbed_radial(0.8, 0.05, lambda t: np.sin(3 * t))
    t = np.linspace(0, 6, 40)
    assert np.allclose(A.rho(t), B.rho(t), atol=1e-13)


def test_perturbed_errors():
    with pytest.raises(GeometryError):
        perturbed_radial(0.0, 0.0, SIN3)
    with pytest.raises(GeometryError):
        perturbed_radial(0.5, 1.0, SIN3)
    with pytest.raises(GeometryError, match="convex"):
        perturbed_radial(1.0, 0.3, [(5, 1.0, 0.0)])


# -- polygon pairs ------------------------------------------------------------------


def test_gardner_pair_equal_projections(gardner):
    p, P1, P2, g1, g2 = gardner
    rep = gardner_report(p, P1, P2, g1, g2)
    assert rep.max_row_diff < 1e-6 and rep.equal_projections
    assert rep.outside_rows > 0 and rep.outside_bitwise_equal
    assert rep.congruence_residual > 1e-3 and rep.non_congruent
    assert not np.array_equal(P1.vertices, P2.vertices)


def test_gardner_degenerate_cap():
    p, base, g1, g2 = gardner_fixture(cap_edges=(), heights=())
    P1, P2 = gardner_pair(p, base, g1, g2)
    assert len(P1.vertices) == len(P2.vertices)
    for v in P2.vertices:
        assert min(dist(v, w) for w in P1.vertices) < 1e-12
    assert congruence_residual(P1, P2) < 1e-6


def test_gardner_not_reflectable():
    p, base, g1, g2 = gardner_fixture()
    q = exp_point(ORIGIN, 0.3, 0.05)
    with pytest.raises(GeometryError, match="pencil point"):
        gardner_pair(q, base, g1, g2)
    h1, h2 = line_at_angle(q, 0.6), line_at_angle(q, 1.5)
    with pytest.raises(GeometryError, match="cap not reflectable"):
        gardner_pair(q, base, h1, h2)


def test_congruence_residual_detects_congruent_copy(gardner):
    _, P1, _, _, _ = gardner
    iso = Isometry.rotation_about(uhp(0.1, 1.1), 0.7)
    Q = HalfPlaneBody.from_vertices([iso.apply_vec(v) for v in P1.vertices], iso(P1.interior_point))
    assert congruence_residual(P1, Q) < 1e-6


# -- reconstruction ---------------------------------------------------------------


def test_round_trip_instance():
    ell, ell_p = forward_lengths(1.0, math.e, 0.5)
    assert ell == pytest.approx(1.0, abs=1e-15)
    assert ell_p == pytest.approx(0.5 * math.log((math.e**2 - 0.25) / 0.75), abs=1e-15)
    r, R = invert_lengths(ell, ell_p, 0.5)
    assert r == pytest.approx(1.0, abs=1e-10) and R == pytest.approx(math.e, abs=1e-10)


@given(st.floats(0.05, 0.9), st.floats(1.01, 3.0), st.floats(1.01, 4.0))
def test_round_trip_property(tr, rr, Rr):
    t = tr
    r = t * rr
    R = r * Rr
    back = invert_lengths(*forward_lengths(r, R, t), t)
    assert back == pytest.approx((r, R), rel=1e-8)


def test_inversion_rejects_inconsistent():
    with pytest.raises(GeometryError):
        invert_lengths(1.0, 0.9, 0.5)
    with pytest.raises(GeometryError):
        forward_lengths(0.4, 1.0, 0.5)
    with pytest.raises(GeometryError):
        ProjectionDatum(0.0, -1.0, 1.0, 0.5)
    bad = [ProjectionDatum(0.0, 1.0, 0.5, 0.5)]
    with pytest.raises(GeometryError, match="theta=0.0"):
        reconstruct_from_projections(bad)


def test_offset_line_geometry():
    # in the frame of the vertical axis, the offset line is Re z = t: it meets the
    # semicircle of radius r at height sqrt(r^2 - t^2)
    L = line_at_angle(ORIGIN, 0.4)
    Lp = offset_line(L, 0.5)
    from hyptom.bodies import slab_planes

    g_lo, g_hi = slab_planes(L, 0.0, 1.0)
    a, b = intersect(Lp, g_lo), intersect(Lp, g_hi)
    assert dist(a, b) == pytest.approx(forward_lengths(1.0, math.e, 0.5)[1], abs=1e-12)


def test_measure_then_reconstruct_radial():
    K = perturbed_radial(0.8, 0.05, [(2, 1.0, 0.0), (3, 0.0, 1.0)])
    R = reconstruct_from_projections(measure_projection_data(K, ORIGIN, 180))
    gap = max(abs(radial_profile(K, ORIGIN, th) - radial_profile(R, ORIGIN, th)) for th in np.linspace(0, 2 * math.pi, 181))
    assert gap < 1e-3


def test_reconstruct_is_identity_on_slab_bodies(slab):
    R = reconstruct_from_projections(measure_projection_data(slab, ORIGIN, 180))
    gap = max(abs(radial_profile(slab, ORIGIN, th) - radial_profile(R, ORIGIN, th)) for th in np.linspace(0, 2 * math.pi, 361))
    assert gap < 1e-6


def test_disc_data_rebuild_constant_width():
    data = measure_projection_data(disc(ORIGIN, 0.8), ORIGIN, 180)
    assert np.ptp([d.ell for d in data]) < 1e-12
    assert width_profile(reconstruct_from_projections(data), 360).spread < 1e-6


def test_data_csv_round_trip():
    data = measure_projection_data(perturbed_radial(0.8, 0.05, SIN3), ORIGIN, 12)
    text = data_to_csv(data)
    assert text.splitlines()[0] == "theta,ell,ell_prime,t"
    assert data_from_csv(text) == data


def test_data_csv_errors():
    with pytest.raises(ValueError, match="line 1"):
        data_from_csv("a,b,c,d\n")
    with pytest.raises(ValueError, match="line 3"):
        data_from_csv("theta,ell,ell_prime,t\n0,1,1.2,0.5\n0.1,1,oops,0.5\n")
    with pytest.raises(ValueError, match="line 2"):
        data_from_csv("theta,ell,ell_prime,t\n0,1,1.2\n")
