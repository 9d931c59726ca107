"""Command line front end: ``hyptom construct|measure|verify|reconstruct|render``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .bodies import body_from_json
from .constructions import (
    ReuleauxSpec,
    data_from_csv,
    data_to_csv,
    disc,
    gardner_fixture,
    gardner_pair,
    gardner_report,
    measure_projection_data,
    perturbed_radial,
    reconstruct_from_projections,
    reuleaux,
    slab_body,
)
from .geodesics import Geodesic
from .hypcore import GeometryError, parse_point
from .render import render_svg
from .suites import SUITES, run_suite
from .tomography import Pencil, pencil_profile, point_reflection_asymmetry


class CLIError(Exception):
    pass


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hyptom-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, out):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror}") from exc


def load_body(path, index=0):
    obj = read_json(path)
    if obj.get("kind") == "pair":
        obj = obj["bodies"][index]
    try:
        return body_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise CLIError(f"{path}: malformed body: missing or bad field {exc}") from exc


def load_geodesics(path):
    if path is None:
        return []
    obj = read_json(path)
    items = obj.get("geodesics", []) if isinstance(obj, dict) else obj
    try:
        return [Geodesic.from_json(g) for g in items]
    except (KeyError, TypeError) as exc:
        raise CLIError(f"{path}: malformed geodesic: {exc}") from exc


def parse_coeffs(text):
    """``"k:a:b;k:a:b"`` into Fourier triples."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            k, a, b = part.split(":")
            out.append((int(k), float(a), float(b)))
        except ValueError as exc:
            raise CLIError(f"bad Fourier term {part!r}; expected k:a:b") from exc
    return out


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(s):
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _point_arg(s):
    try:
        return parse_point(s)
    except GeometryError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def cmd_construct(args):
    center = args.center
    if args.kind == "disc":
        K = disc(center, args.r)
        obj = K.to_json()
    elif args.kind == "reuleaux":
        obj = reuleaux(ReuleauxSpec(center, args.circumradius)).to_json()
    elif args.kind == "radial":
        obj = perturbed_radial(args.c, args.eps, parse_coeffs(args.coeffs), center).to_json()
    elif args.kind == "slab":
        obj = slab_body(args.r0, args.eps, parse_coeffs(args.coeffs), args.m, center).to_json()
    elif args.kind == "gardner":
        p, base, g1, g2 = gardner_fixture()
        P1, P2 = gardner_pair(p, base, g1, g2)
        rep = gardner_report(p, P1, P2, g1, g2, seed=args.seed)
        obj = {"kind": "pair", "bodies": [P1.to_json(), P2.to_json()], "wedge": [g1.to_json(), g2.to_json()], "report": rep.to_json()}
    else:  # argparse restricts choices
        raise CLIError(f"unknown body kind {args.kind!r}")
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_measure(args):
    K = load_body(args.body, args.index)
    p = args.pencil
    interior = K.gauge(p) < 0
    if args.what == "section" and not interior:
        raise CLIError("pencil center is outside the body; sections need an interior center")
    table = pencil_profile(K, Pencil(p, args.m), args.what, dn_tol=args.tol)
    summary = table.summary(args.tol)
    summary["point_symmetric"] = (point_reflection_asymmetry(K, p, 2 * args.m) < args.tol) if interior else None
    if args.out:
        text = json.dumps({"table": table.to_json(), "summary": summary}, indent=2, sort_keys=True) + "\n" if args.out.endswith(".json") else table.to_csv()
        write_atomic(args.out, text)
    if args.data_out:
        write_atomic(args.data_out, data_to_csv(measure_projection_data(K, p, args.m)))
    sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_verify(args):
    try:
        rep = run_suite(args.suite, seed=args.seed)
    except KeyError as exc:
        raise CLIError(exc.args[0]) from exc
    text = json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if args.out:
        write_atomic(args.out, text)
    sys.stdout.write(text)
    return 0 if rep["pass"] else 1


def cmd_reconstruct(args):
    try:
        with open(args.data) as fh:
            data = data_from_csv(fh.read())
    except OSError as exc:
        raise CLIError(f"{args.data}: {exc.strerror}") from exc
    except ValueError as exc:
        raise CLIError(f"{args.data}: {exc}") from exc
    K = reconstruct_from_projections(data, args.pencil)
    _emit(json.dumps(K.to_json(), indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_render(args):
    K = load_body(args.body, args.index) if args.body else None
    svg = render_svg(K, load_geodesics(args.geodesics))
    _emit(svg, args.out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="hyptom", description="Geometric tomography in the hyperbolic plane.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, body=False):
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        if body:
            p.add_argument("--body", required=True, help="body JSON file")
            p.add_argument("--index", type=int, default=0, help="which body of a pair file")

    c = sub.add_parser("construct", help="build a body and write its JSON")
    c.add_argument("kind", choices=["disc", "reuleaux", "radial", "slab", "gardner"])
    c.add_argument("--center", type=_point_arg, default=parse_point("uhp:0,1"), help='center as "model:u,v"')
    c.add_argument("--r", type=_positive_float, default=1.0, help="disc radius")
    c.add_argument("--circumradius", type=_positive_float, default=1.0)
    c.add_argument("--c", type=_positive_float, default=0.8, help="base radius of a radial body")
    c.add_argument("--r0", type=_positive_float, default=0.7, help="half width of the slabs")
    c.add_argument("--eps", type=float, default=0.0)
    c.add_argument("--coeffs", default="", help='Fourier terms "k:a:b;..." (slab: odd modes only)')
    c.add_argument("--m", type=_positive_int, default=180, help="number of slabs")
    common(c)
    c.set_defaults(fn=cmd_construct)

    m = sub.add_parser("measure", help="pencil measurement table")
    common(m, body=True)
    m.add_argument("--pencil", type=_point_arg, default=parse_point("uhp:0,1"), help='pencil center "model:u,v"')
    m.add_argument("--m", type=_positive_int, default=360, help="pencil lines")
    m.add_argument("--tol", type=_positive_float, default=1e-6)
    m.add_argument("--what", choices=["projection", "section"], default="projection")
    m.add_argument("--data-out", help="also write projection data CSV for reconstruct")
    m.set_defaults(fn=cmd_measure)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="one of: " + ", ".join(list(SUITES) + ["all"]))
    common(v)
    v.add_argument("--tol", type=_positive_float, default=None, help="accepted for uniformity; suites use fixed thresholds")
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("reconstruct", help="rebuild a body from projection data CSV")
    r.add_argument("--data", required=True, help='CSV with header "theta,ell,ell_prime,t"')
    r.add_argument("--pencil", type=_point_arg, default=parse_point("uhp:0,1"))
    common(r)
    r.set_defaults(fn=cmd_reconstruct)

    d = sub.add_parser("render", help="SVG figure in the Poincare disc")
    d.add_argument("--body", help="body JSON file")
    d.add_argument("--index", type=int, default=0)
    d.add_argument("--geodesics", help='JSON list of geodesics or {"geodesics": [...]}')
    d.add_argument("--out", help="output SVG path")
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(fn=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CLIError, GeometryError) as exc:
        sys.stderr.write(f"hyptom: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
