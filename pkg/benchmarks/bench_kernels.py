"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 2048] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hyptom import _pykernels

try:
    from hyptom import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def points(rng, n, r=1.5):
    rad = r * np.sqrt(rng.uniform(size=n))
    phi = rng.uniform(0, 2 * np.pi, n)
    return np.ascontiguousarray(np.column_stack([np.cosh(rad), np.sinh(rad) * np.cos(phi), np.sinh(rad) * np.sin(phi)]))


def cases(n, rng):
    P = points(rng, n)
    c = np.array([1.0, 0.0, 0.0])
    u = np.array([0.0, 1.0, 0.0])
    nv = np.array([0.0, 0.0, -1.0])
    N = np.ascontiguousarray(rng.normal(size=(64, 3)))
    C = np.ascontiguousarray(P[:3])
    R = np.array([1.0, 1.2, 1.4])
    theta = np.linspace(0, 2 * np.pi, n)
    ks = np.arange(9, dtype=float)
    a = rng.normal(size=9) * 0.01
    b = rng.normal(size=9) * 0.01
    x = P[n // 2].copy()
    return {
        "foot_coords": (P, c, u, nv),
        "max_inner": (P, N),
        "disc_gauge": (P, C, R),
        "farthest_pair": (P[: min(n, 1024)],),
        "nearest_index": (P, x),
        "fourier_eval": (theta, ks, a, b),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2048)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<16}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, a in cases(args.n, rng).items():
        num = 3 if name == "farthest_pair" else 50
        tp = min(timeit.repeat(lambda: getattr(_pykernels, name)(*a), number=num, repeat=args.repeat)) / num
        if _ckernels is None:
            print(f"{name:<16}{tp * 1e3:>14.4f}{'n/a':>14}{'':>10}")
            continue
        tc = min(timeit.repeat(lambda: getattr(_ckernels, name)(*a), number=num, repeat=args.repeat)) / num
        print(f"{name:<16}{tp * 1e3:>14.4f}{tc * 1e3:>14.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
