"""Benchmark the compiled kernel core against the pure-numpy twin.

Times the hot primitives (micro) and a finite-difference curvature
evaluation that exercises them in context (macro).

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from nkcp3 import _kernels_py

try:
    from nkcp3 import _kernels_cy
except ImportError:
    _kernels_cy = None


def micro(mod, n=20000):
    rng = np.random.default_rng(0)
    q = rng.standard_normal(8)
    q = (q[:4] + 1j * q[4:]).astype(np.complex128)
    q /= np.sqrt(mod.rinner(q, q))
    w = rng.standard_normal(8)
    w = (w[:4] + 1j * w[4:]).astype(np.complex128)
    w = mod.horizontalize(q, w)
    t0 = time.perf_counter()
    acc = 0.0
    for _ in range(n):
        v = mod.jmul(w)
        v = mod.apply_j(q, v)
        d12, d24 = mod.split(q, v)
        acc += mod.metric(2.0, q, d24, w)
        v = mod.horizontalize(q, v + d12)
        acc += mod.rinner(v, w)
    return time.perf_counter() - t0, acc


def macro(backend, n=40):
    """Finite-difference curvature samples on the selected backend."""
    import importlib
    import os

    os.environ["NKCP3_KERNELS"] = backend
    import nkcp3.kernels

    importlib.reload(nkcp3.kernels)
    import nkcp3.connection
    import nkcp3.curvature

    importlib.reload(nkcp3.connection)
    importlib.reload(nkcp3.curvature)
    from nkcp3.ambient import SpherePoint, norm, random_ambient
    from nkcp3.curvature import riemann_closed, riemann_numeric
    from nkcp3 import hopf

    rng = np.random.default_rng(1)
    v = random_ambient(rng)
    q = SpherePoint(v / norm(v))
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(n):
        X = hopf.random_horizontal(q, rng)
        Y = hopf.random_horizontal(q, rng)
        Z = hopf.random_horizontal(q, rng)
        res = riemann_numeric(2.0, X, Y, Z)
        worst = max(worst, norm(res.value.vec - riemann_closed(2.0, X, Y, Z).vec))
    dt = time.perf_counter() - t0
    os.environ.pop("NKCP3_KERNELS")
    importlib.reload(nkcp3.kernels)
    return dt, worst


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print("micro benchmark (20k kernel chains):")
    times = {}
    for label, mod in (("python", _kernels_py), ("cython", _kernels_cy)):
        if mod is None:
            print(f"  {label:>7}: not built")
            continue
        times[label] = min(micro(mod)[0] for _ in range(args.repeat))
        print(f"  {label:>7}: {times[label]*1e3:8.1f} ms")
    if _kernels_cy is not None:
        print(f"  speedup: {times['python'] / times['cython']:.2f}x")
        acc_py = micro(_kernels_py, 200)[1]
        acc_cy = micro(_kernels_cy, 200)[1]
        print(f"  numerical agreement: {abs(acc_py - acc_cy):.2e}")

    print("macro benchmark (40 finite-difference curvature tensors):")
    for backend in ("py", "cy") if _kernels_cy is not None else ("py",):
        dt, worst = macro(backend)
        print(f"  {backend:>7}: {dt*1e3:8.1f} ms   (oracle residual {worst:.2e})")


if __name__ == "__main__":
    main()
