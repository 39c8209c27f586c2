"""Time the compiled orbit kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--orbits N] [--steps N] [--repeat N]
"""

import argparse
import time

import numpy as np

from rationaldiff import _kernels_py

try:
    from rationaldiff import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def cplx(rng, shape):
    return rng.uniform(-2, 2, shape) + 1j * rng.uniform(-2, 2, shape)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orbits", type=int, default=20_000)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    m, n = args.orbits, args.steps
    params = cplx(rng, (m, 4))
    x0 = cplx(rng, m)
    B, z0, zm1 = cplx(rng, m), cplx(rng, m), cplx(rng, m)

    cases = [("riccati", lambda k: lambda: k.riccati_orbits(params, x0, n, 1e-12))]
    for eq in range(4, 10):
        cases.append((f"eq{eq}", lambda k, eq=eq: lambda: k.so_orbits(eq, B, z0, zm1, n, 1e-12)))

    print(f"{m} orbits x {n} steps, best of {args.repeat}")
    print(f"{'kernel':<10}{'python s':>12}{'compiled s':>12}{'speedup':>10}  identical")
    for name, make in cases:
        t_py, (v_py, s_py) = best_of(make(_kernels_py), args.repeat)
        if _kernels is None:
            print(f"{name:<10}{t_py:>12.4f}{'n/a':>12}{'':>10}  -")
            continue
        t_c, (v_c, s_c) = best_of(make(_kernels), args.repeat)
        same = np.array_equal(s_py, s_c) and np.array_equal(v_py.view(np.uint64), v_c.view(np.uint64))
        print(f"{name:<10}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x  {same}")
    if _kernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
