"""Named numerical verification suites run by ``hyptom verify``.

Each suite returns a JSON-ready report: a one-line statement of the
property under test, the individual checks with their measured values and
thresholds, and an overall verdict that is the conjunction of the checks.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .constructions import (
    ReuleauxSpec,
    disc,
    gardner_fixture,
    gardner_pair,
    gardner_report,
    invert_lengths,
    forward_lengths,
    measure_projection_data,
    perturbed_radial,
    reconstruct_from_projections,
    reuleaux,
    slab_body,
)
from .geodesics import geodesic_through, line_at_angle, perpendicular_at
from .hypcore import ORIGIN, uhp
from .tomography import (
    chord_lengths,
    diameter,
    endpoint_angles,
    equichordal_defect,
    intervals_equal,
    is_double_normal,
    normal_angle_profile,
    normal_field_covers,
    normals_intersect_check,
    point_reflection_asymmetry,
    projection,
    projection_lengths,
    projection_spectrum,
    random_interior_points,
    section,
    width_profile,
)

REULEAUX_WIDTH = 1.78774413
REULEAUX_SECTION = 1.67461854
REULEAUX_PROJECTION = 1.7133762


def _check(name, value, threshold, ok):
    return {"name": name, "value": float(value), "threshold": float(threshold), "pass": bool(ok)}


def _report(name, claim, checks, t0):
    return {
        "suite": name,
        "claim": claim,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
        "seconds": round(time.perf_counter() - t0, 3),
    }


def vertical_axis():
    return geodesic_through(uhp(0, 1), uhp(0, 2))


def cross_line():
    return perpendicular_at(vertical_axis(), uhp(0, 1))


def perturbed_fixtures():
    return [
        perturbed_radial(1.0, 0.05, [(2, 1, 0)]),
        perturbed_radial(0.8, 0.05, [(3, 0, 1)]),
        perturbed_radial(1.2, 0.04, [(2, 0.5, 0.2), (4, 0.3, 0)]),
    ]


def suite_reuleaux_numbers(seed=0):
    t0 = time.perf_counter()
    K = reuleaux()
    wp = width_profile(K, 360)
    pr = projection(K, cross_line()).length
    sec = section(K, cross_line()).length
    checks = [
        _check("width error", max(abs(wp.min_w - REULEAUX_WIDTH), abs(wp.max_w - REULEAUX_WIDTH)), 1e-5, max(abs(wp.min_w - REULEAUX_WIDTH), abs(wp.max_w - REULEAUX_WIDTH)) < 1e-5),
        _check("width spread", wp.spread, 1e-5, wp.spread < 1e-5),
        _check("section error", abs(sec - REULEAUX_SECTION), 1e-5, abs(sec - REULEAUX_SECTION) < 1e-5),
        _check("projection error", abs(pr - REULEAUX_PROJECTION), 1e-4, abs(pr - REULEAUX_PROJECTION) < 1e-4),
        _check("vertical axis is a double normal", float(is_double_normal(K, vertical_axis())), 1, is_double_normal(K, vertical_axis())),
    ]
    return _report("reuleaux-numbers", "the hyperbolic Reuleaux triangle about uhp(0,1) with circumradius 1: width, section and projection values", checks, t0)


def random_line_pairs(n, rng):
    """Bodies paired with lines: half random lines, half boundary normals."""
    bodies = [disc(ORIGIN, 0.9), reuleaux()] + perturbed_fixtures()
    out = []
    for k in range(n):
        K = bodies[k % len(bodies)]
        if k % 2 == 0:
            x = random_interior_points(K, 1, rng)[0]
            g = line_at_angle(x, rng.uniform(0, math.pi))
        else:
            g = K.sample_param(rng.uniform(0, K.period)).normal
        out.append((K, g))
    return out


def suite_double_normal_equality(seed=0, n=100):
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    mismatches = equal = 0
    for K, g in random_line_pairs(n, rng):
        eq = intervals_equal(K, g, 1e-6)
        angs = endpoint_angles(K, g)
        perp = all(abs(a - math.pi / 2) < 1e-5 for a in angs)
        equal += bool(eq)
        mismatches += bool(eq) != perp
    checks = [
        _check("equivalence violations", mismatches, 0, mismatches == 0),
        _check("pairs with equal intervals", equal, 1, equal >= 1),
    ]
    return _report("double-normal-equality", "projection equals section exactly when the line is perpendicular to the boundary at both ends", checks, t0)


def suite_diameter_width(seed=0):
    t0 = time.perf_counter()
    checks = []
    for name, K in [("disc", disc(ORIGIN, 0.9)), ("reuleaux", reuleaux())] + [(f"perturbed {i}", K) for i, K in enumerate(perturbed_fixtures())]:
        gap = abs(diameter(K) - width_profile(K, 360, refine=True).max_w)
        checks.append(_check(f"{name}: |diameter - max width|", gap, 1e-6, gap < 1e-6))
    return _report("diameter-width", "the diameter equals the maximal width", checks, t0)


def suite_normal_field(seed=0, trials=100):
    t0 = time.perf_counter()
    checks = []
    for name, K in [("disc", disc(ORIGIN, 0.9)), ("reuleaux", reuleaux())] + [(f"perturbed {i}", K) for i, K in enumerate(perturbed_fixtures())]:
        r = normal_field_covers(K, trials, seed=seed)
        checks.append(_check(f"{name}: worst angle defect", r.margin, 1e-6, r.margin < 1e-6))
    return _report("normal-field", "every interior point lies on a boundary normal (through its nearest boundary point)", checks, t0)


def suite_normals_meet(seed=0, trials=1000):
    t0 = time.perf_counter()
    r = normals_intersect_check(reuleaux(), trials, seed=seed)
    from .bodies import HalfPlaneBody
    from .hypcore import klein

    thin = HalfPlaneBody.from_vertices([klein(-0.8, -0.05), klein(0.8, -0.05), klein(0.8, 0.05), klein(-0.8, 0.05)])
    c = normals_intersect_check(thin, 200, seed=seed)
    checks = [
        _check("reuleaux violations", r.violations, 0, r.violations == 0),
        _check("thin rectangle violations (control)", c.violations, 1, c.violations >= 1),
    ]
    return _report("normals-meet", "any two normals of a constant-width body meet inside it", checks, t0)


def suite_angle_monotone(seed=0, m=200):
    t0 = time.perf_counter()
    chains = normal_angle_profile(reuleaux(), vertical_axis(), m)
    checks = []
    for i, ch in enumerate(chains):
        a = np.array([x[1] for x in ch])
        drop = float(max(0.0, -np.diff(a).min()))
        crossings = int(np.sum((a[:-1] - math.pi / 2) * (a[1:] - math.pi / 2) < 0))
        checks += [
            _check(f"chain {i}: largest decrease", drop, 1e-9, drop <= 1e-9),
            _check(f"chain {i}: start angle", a[0], 1e-3, a[0] < 1e-3),
            _check(f"chain {i}: pi - end angle", math.pi - a[-1], 1e-3, a[-1] > math.pi - 1e-3),
            _check(f"chain {i}: crossings of pi/2", crossings, 1, crossings == 1),
        ]
    return _report("angle-monotone", "along the boundary between the feet of a double normal, the angle with the perpendiculars increases from 0 to pi", checks, t0)


def suite_projection_bound(seed=0, n=300):
    t0 = time.perf_counter()
    K = reuleaux()
    w = width_profile(K, 360).max_w
    rng = np.random.default_rng(seed)
    X = random_interior_points(K, n, rng)
    excess, bad_dn, bad_eq, n_dn, n_eq = -math.inf, 0, 0, 0, 0
    lines = [line_at_angle(x, rng.uniform(0, math.pi)) for x in X]
    lines += [K.sample_param(s).normal for s in rng.uniform(0, K.period, n // 5)]
    for g in lines:
        pl = projection(K, g).length
        excess = max(excess, pl - w)
        dn = is_double_normal(K, g, 1e-4)
        if dn:
            n_dn += 1
            bad_dn += abs(pl - w) >= 1e-4
        if w - pl < 1e-9:
            n_eq += 1
            bad_eq += not dn
    checks = [
        _check("max projection - width", excess, 1e-6, excess <= 1e-6),
        _check("double normals with projection below width", bad_dn, 0, bad_dn == 0 and n_dn > 0),
        _check("width-attaining lines that are not double normals", bad_eq, 0, bad_eq == 0 and n_eq > 0),
    ]
    return _report("projection-bound", "projections of a constant-width body never exceed the width, with equality at double normals", checks, t0)


def suite_small_projection(seed=0):
    t0 = time.perf_counter()
    K = reuleaux()
    D = diameter(K)
    targets = np.linspace(0.05, D, 20)
    got = projection_spectrum(K, targets)
    err = max(abs(t - l) for t, _, l in got)
    checks = [_check("worst target miss", err, 1e-3, err < 1e-3)]
    D1 = disc(ORIGIN, 1.0)
    from .tomography import small_projection

    for delta in (0.5, 0.1, 0.01):
        l = projection(D1, small_projection(D1, delta)).length
        checks.append(_check(f"disc projection below {delta}", l, delta, l < delta))
    return _report("small-projection", "projection lengths of a body fill the interval (0, diameter]", checks, t0)


def suite_slab_body(seed=0):
    t0 = time.perf_counter()
    K = slab_body(0.7, 0.03, lambda t: np.sin(t), 180)
    pl = projection_lengths(K, ORIGIN, 360)
    asym = point_reflection_asymmetry(K, ORIGIN, 360)
    E = perturbed_radial(0.8, 0.05, [(3, 0, 1)])
    spread = float(np.ptp(chord_lengths(E, ORIGIN, 360)))
    wsp = width_profile(E, 360).spread
    checks = [
        _check("slab body projection spread", np.ptp(pl), 1e-4, np.ptp(pl) < 1e-4),
        _check("slab body point-reflection asymmetry", asym, 1e-2, asym > 1e-2),
        _check("odd radial body chord spread", spread, 1e-9, spread < 1e-9),
        _check("odd radial body width spread", wsp, 1e-3, wsp > 1e-3),
    ]
    return _report("slab-body", "non-symmetric bodies with constant projections, and with constant chords, on a pencil", checks, t0)


def suite_equichordal(seed=0):
    t0 = time.perf_counter()
    checks = []
    for name, K, p in [("disc", disc(ORIGIN, 0.9), ORIGIN), ("odd radial", perturbed_radial(0.8, 0.05, [(3, 0, 1)]), ORIGIN)]:
        d = equichordal_defect(K, p, 180)
        checks.append(_check(f"{name}: chord defect", d, 1e-9, d < 1e-9))
    d = equichordal_defect(reuleaux(), ORIGIN, 180)
    checks.append(_check("reuleaux: chord defect (control)", d, 0.05, d > 0.05))
    return _report("equichordal", "chords through an equichordal point have a common length", checks, t0)


def suite_reconstruction(seed=0):
    t0 = time.perf_counter()
    ell, ellp = forward_lengths(1.0, math.e, 0.5)
    r, R = invert_lengths(ell, ellp, 0.5)
    K = perturbed_radial(0.8, 0.05, [(3, 0, 1)])
    B = reconstruct_from_projections(measure_projection_data(K, ORIGIN, 180))
    from .bodies import radial_profile

    th = np.linspace(0, 2 * np.pi, 360, endpoint=False)
    disc_err = max(abs(radial_profile(B, ORIGIN, x) - radial_profile(K, ORIGIN, x)) for x in th)
    checks = [
        _check("round trip error", max(abs(r - 1), abs(R - math.e)), 1e-10, max(abs(r - 1), abs(R - math.e)) < 1e-10),
        _check("radial discrepancy", disc_err, 1e-3, disc_err < 1e-3),
    ]
    return _report("reconstruction", "a body is recovered from orthogonal and offset projection lengths on a pencil", checks, t0)


FALSIFICATION_FAMILIES = (
    ("cos2", [(2, 1.0, 0.0)]),
    ("cos4", [(4, 1.0, 0.0)]),
    ("mix50", [(2, 0.5, 0.0), (4, 0.5, 0.0)]),
    ("mix70", [(2, 0.7, 0.0), (4, 0.3, 0.0)]),
    ("mix30", [(2, 0.3, 0.0), (4, 0.7, 0.0)]),
)


def falsification_grid(n_eps=40, c=1.5, m=32):
    """Width spread and pencil projection spread over symmetric Fourier perturbations."""
    rows = []
    for name, f in FALSIFICATION_FAMILIES:
        for eps in np.linspace(0.01, 0.1, n_eps):
            K = perturbed_radial(c, float(eps), f)
            rows.append((name, float(eps), width_profile(K, m).spread, float(np.ptp(projection_lengths(K, ORIGIN, m)))))
    for name, f in FALSIFICATION_FAMILIES[:1]:
        K = perturbed_radial(c, 0.0, f)
        rows.append((name, 0.0, width_profile(K, m).spread, float(np.ptp(projection_lengths(K, ORIGIN, m)))))
    return rows


def suite_falsification(seed=0, n_eps=40):
    t0 = time.perf_counter()
    rows = falsification_grid(n_eps)
    pert = [r for r in rows if r[1] > 0]
    ctrl = [r for r in rows if r[1] == 0]
    min_spread = min(r[2] for r in pert)
    both = sum(1 for r in pert if r[2] < 1e-6 and r[3] < 1e-6)
    ctrl_ok = all(r[2] < 1e-6 and r[3] < 1e-6 for r in ctrl)
    checks = [
        _check("smallest width spread over perturbed bodies", min_spread, 0, min_spread > 0),
        _check("perturbed bodies with constant width and constant projections", both, 0, both == 0),
        _check("disc control is constant", float(ctrl_ok), 1, ctrl_ok),
    ]
    return _report("falsification", "no symmetric non-disc perturbation is of constant width with constant pencil projections", checks, t0)


def suite_gardner(seed=0):
    t0 = time.perf_counter()
    p, base, g1, g2 = gardner_fixture()
    P1, P2 = gardner_pair(p, base, g1, g2)
    rep = gardner_report(p, P1, P2, g1, g2, seed=seed)
    checks = [
        _check("max row difference", rep.max_row_diff, 1e-6, rep.equal_projections),
        _check("rows outside the wedge bitwise equal", float(rep.outside_bitwise_equal), 1, rep.outside_bitwise_equal),
        _check("congruence residual", rep.congruence_residual, 1e-3, rep.non_congruent),
    ]
    return _report("gardner", "two non-congruent polygons with equal projections on a pencil", checks, t0)


SUITES = {
    "reuleaux-numbers": suite_reuleaux_numbers,
    "double-normal-equality": suite_double_normal_equality,
    "diameter-width": suite_diameter_width,
    "normal-field": suite_normal_field,
    "normals-meet": suite_normals_meet,
    "angle-monotone": suite_angle_monotone,
    "projection-bound": suite_projection_bound,
    "small-projection": suite_small_projection,
    "slab-body": suite_slab_body,
    "equichordal": suite_equichordal,
    "reconstruction": suite_reconstruction,
    "falsification": suite_falsification,
    "gardner": suite_gardner,
}


def run_suite(name: str, seed: int = 0) -> dict:
    if name == "all":
        reports = [fn(seed=seed) for fn in SUITES.values()]
        return {"suite": "all", "reports": reports, "pass": all(r["pass"] for r in reports)}
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))} or all")
    return SUITES[name](seed=seed)
