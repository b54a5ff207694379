"""Compare the numba and numpy versions of the floating kernels.

    python3 benchmarks/bench_kernels.py [--trajectories 1500] [--steps 4096] [--repeat 3]

Both paths are called directly, so the ABELCENTER_DISABLE_NUMBA flag does not
matter here; it only picks the default used by the library.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from abelcenter import _kernels


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rk4(m: int, steps: int, repeat: int) -> None:
    rng = np.random.default_rng(0)
    pc = rng.uniform(-1, 1, (m, 6))
    qc = rng.uniform(-1, 1, (m, 6))
    a, b = -np.ones(m), np.ones(m)
    eps = rng.choice([-1.0, 0.0, 1.0], m)
    y0 = np.full(m, 1e-2)
    ref = _kernels.rk4_flow_numpy(pc, qc, a, b, eps, y0, steps)
    t_np = _best(lambda: _kernels.rk4_flow_numpy(pc, qc, a, b, eps, y0, steps), repeat)
    print(f"rk4   numpy  {m} x {steps}: {t_np:8.3f} s")
    if _kernels.HAVE_NUMBA:
        _kernels.rk4_flow(pc, qc, a, b, eps, y0, steps)  # compile
        t_nb = _best(lambda: _kernels.rk4_flow(pc, qc, a, b, eps, y0, steps), repeat)
        diff = np.max(np.abs(_kernels.rk4_flow(pc, qc, a, b, eps, y0, steps) - ref))
        print(f"rk4   numba  {m} x {steps}: {t_nb:8.3f} s  speedup {t_np / t_nb:5.1f}x  max diff {diff:.1e}")


def bench_cheb(n: int, points: int, repeat: int) -> None:
    x = np.cos(np.linspace(0, np.pi, points))
    T_ref, _ = _kernels.cheb_tu_numpy(n, x)
    t_np = _best(lambda: _kernels.cheb_tu_numpy(n, x), repeat)
    print(f"cheb  numpy  n={n}, {points} pts: {t_np:8.3f} s")
    if _kernels.HAVE_NUMBA:
        _kernels.cheb_tu(n, x)
        t_nb = _best(lambda: _kernels.cheb_tu(n, x), repeat)
        diff = np.max(np.abs(_kernels.cheb_tu(n, x)[0] - T_ref))
        print(f"cheb  numba  n={n}, {points} pts: {t_nb:8.3f} s  speedup {t_np / t_nb:5.1f}x  max diff {diff:.1e}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trajectories", type=int, default=1500)
    ap.add_argument("--steps", type=int, default=4096)
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"numba available: {_kernels.HAVE_NUMBA}")
    bench_rk4(args.trajectories, args.steps, args.repeat)
    bench_cheb(30, args.points, args.repeat)


if __name__ == "__main__":
    main()
