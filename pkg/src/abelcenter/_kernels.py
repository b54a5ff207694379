"""Floating-point hot loops: RK4 flow of y' = p y^2 + eps q y^3 and Chebyshev evaluation.

Each kernel has a numba version and a vectorized numpy version. Setting
ABELCENTER_DISABLE_NUMBA=1 in the environment (before import) selects the
numpy path; so does a missing numba install.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ABELCENTER_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    HAVE_NUMBA = False


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def pad_coeffs(rows: list[list[float]]) -> np.ndarray:
    """Stack ascending coefficient lists into a zero-padded (M, width) array."""
    width = max(1, max((len(r) for r in rows), default=1))
    out = np.zeros((len(rows), width))
    for i, r in enumerate(rows):
        out[i, :len(r)] = r
    return out


# ----------------------------------------------------------------------------
# RK4
# ----------------------------------------------------------------------------

def rk4_flow_numpy(pc, qc, a, b, eps, y0, steps):
    """Integrate every row from a[i] to b[i]; rows that blow up come back as nan."""
    pc, qc = np.asarray(pc, float), np.asarray(qc, float)
    a, b = np.asarray(a, float), np.asarray(b, float)
    eps, y = np.asarray(eps, float), np.array(y0, float)
    h = (b - a) / steps

    def horner(c, x):
        acc = c[:, -1].copy()
        for k in range(c.shape[1] - 2, -1, -1):
            acc = acc * x + c[:, k]
        return acc

    def rhs(x, y):
        return horner(pc, x) * y * y + eps * horner(qc, x) * y * y * y

    with np.errstate(over="ignore", invalid="ignore"):
        for s in range(steps):
            x = a + s * h
            k1 = rhs(x, y)
            k2 = rhs(x + h / 2, y + h / 2 * k1)
            k3 = rhs(x + h / 2, y + h / 2 * k2)
            k4 = rhs(x + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    y[~np.isfinite(y)] = np.nan
    return y


def _rk4_flow_scalar(pc, qc, a, b, eps, y0, steps):
    M = pc.shape[0]
    out = np.empty(M)
    ks = np.empty(4)
    for i in range(M):
        h = (b[i] - a[i]) / steps
        y = y0[i]
        for s in range(steps):
            x = a[i] + s * h
            yy = y
            for stage in range(4):
                if stage == 0:
                    xs, ys = x, yy
                elif stage == 1:
                    xs, ys = x + h / 2, yy + h / 2 * ks[0]
                elif stage == 2:
                    xs, ys = x + h / 2, yy + h / 2 * ks[1]
                else:
                    xs, ys = x + h, yy + h * ks[2]
                pv = 0.0
                for k in range(pc.shape[1] - 1, -1, -1):
                    pv = pv * xs + pc[i, k]
                qv = 0.0
                for k in range(qc.shape[1] - 1, -1, -1):
                    qv = qv * xs + qc[i, k]
                ks[stage] = pv * ys * ys + eps[i] * qv * ys * ys * ys
            y = yy + h / 6 * (ks[0] + 2 * ks[1] + 2 * ks[2] + ks[3])
            if not np.isfinite(y):
                y = np.nan
                break
        out[i] = y
    return out


# ----------------------------------------------------------------------------
# Chebyshev values: T_n(x) and U_{n-1}(x) by the three-term recurrence
# ----------------------------------------------------------------------------

def cheb_tu_numpy(n, x):
    x = np.asarray(x, float)
    t_prev, t = np.ones_like(x), x.copy()
    u_prev, u = np.zeros_like(x), np.ones_like(x)  # U_{-1}, U_0
    if n == 0:
        return t_prev, u_prev
    for _ in range(n - 1):
        t_prev, t = t, 2 * x * t - t_prev
        u_prev, u = u, 2 * x * u - u_prev
    return t, u


def _cheb_tu_scalar(n, x):
    T = np.empty(x.shape[0])
    U = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        xi = x[i]
        if n == 0:
            T[i], U[i] = 1.0, 0.0
            continue
        tp, t, up, u = 1.0, xi, 0.0, 1.0
        for _ in range(n - 1):
            tp, t = t, 2 * xi * t - tp
            up, u = u, 2 * xi * u - up
        T[i], U[i] = t, u
    return T, U


if HAVE_NUMBA:
    _rk4_jit = njit(cache=True)(_rk4_flow_scalar)
    _cheb_jit = njit(cache=True)(_cheb_tu_scalar)

    def rk4_flow(pc, qc, a, b, eps, y0, steps):
        return _rk4_jit(np.ascontiguousarray(pc, dtype=np.float64),
                        np.ascontiguousarray(qc, dtype=np.float64),
                        np.asarray(a, np.float64), np.asarray(b, np.float64),
                        np.asarray(eps, np.float64), np.asarray(y0, np.float64), int(steps))

    def cheb_tu(n, x):
        return _cheb_jit(int(n), np.ascontiguousarray(x, dtype=np.float64))
else:
    rk4_flow = rk4_flow_numpy
    cheb_tu = cheb_tu_numpy
