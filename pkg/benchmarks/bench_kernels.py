"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--points 20000] [--terms 200] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from hypercyclic import _kernels_py

try:
    from hypercyclic import _kernels as compiled
except ImportError:
    compiled = None


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--terms", type=int, default=200)
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(1)
    c = rng.normal(size=args.terms) + 1j * rng.normal(size=args.terms)
    g = np.ascontiguousarray(rng.normal(size=(args.terms, args.dim)) * 0.5 + 0j)
    g0 = np.zeros_like(g)
    b = np.ascontiguousarray(rng.integers(0, 12, size=(args.terms, args.dim)), dtype=np.int_)
    pts = np.ascontiguousarray(np.exp(2j * np.pi * rng.random((args.points, args.dim))))

    cases = {
        "eval_poly": (lambda k: k.eval_terms(c, g0, b, pts)),
        "eval_exp": (lambda k: k.eval_terms(c, g, b, pts)),
        "basis_matrix": (lambda k: k.basis_matrix(pts, b)),
    }
    print(f"{'kernel':<14}{'backend':<10}{'best (ms)':>12}")
    for name, fn in cases.items():
        backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
        times = {}
        for label, mod in backends:
            times[label] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<14}{label:<10}{times[label]:>12.2f}")
        if "cython" in times:
            print(f"{'':<14}{'speedup':<10}{times['python'] / times['cython']:>11.2f}x")
        if compiled:
            assert np.allclose(fn(compiled), fn(_kernels_py), rtol=1e-10)


if __name__ == "__main__":
    main()
