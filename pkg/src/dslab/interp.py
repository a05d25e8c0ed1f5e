"""Vectorized Catmull-Rom cubic interpolation on uniform grids.

Guidance needs smooth phase-derivative fields off-grid; cubic in space and
linear in time is the contract (interpolating re/im would corrupt phase
gradients near nodes).  Edge cells clamp to the boundary value.
"""

from __future__ import annotations

import numpy as np


def _cubic_weights(u: np.ndarray):
    u2 = u * u
    u3 = u2 * u
    w0 = 0.5 * (-u3 + 2.0 * u2 - u)
    w1 = 0.5 * (3.0 * u3 - 5.0 * u2 + 2.0)
    w2 = 0.5 * (-3.0 * u3 + 4.0 * u2 + u)
    w3 = 0.5 * (u3 - u2)
    return w0, w1, w2, w3


def cubic_interp_1d(values: np.ndarray, x0: float, dx: float, xq: np.ndarray) -> np.ndarray:
    """Catmull-Rom interpolation of values sampled at x0 + i*dx."""
    v = np.asarray(values)
    n = v.shape[0]
    pos = (np.asarray(xq, dtype=float) - x0) / dx
    i1 = np.clip(np.floor(pos).astype(np.int64), 0, n - 2)
    u = pos - i1
    i0 = np.clip(i1 - 1, 0, n - 1)
    i2 = np.clip(i1 + 1, 0, n - 1)
    i3 = np.clip(i1 + 2, 0, n - 1)
    w0, w1, w2, w3 = _cubic_weights(u)
    return w0 * v[i0] + w1 * v[i1] + w2 * v[i2] + w3 * v[i3]


def cubic_interp_2d(
    values: np.ndarray,
    origin: tuple[float, float],
    spacing: tuple[float, float],
    xq: np.ndarray,
    yq: np.ndarray,
) -> np.ndarray:
    """Tensor-product Catmull-Rom on a 2D grid values[i, j]."""
    v = np.asarray(values)
    n0, n1 = v.shape
    px = (np.asarray(xq, dtype=float) - origin[0]) / spacing[0]
    py = (np.asarray(yq, dtype=float) - origin[1]) / spacing[1]
    ix = np.clip(np.floor(px).astype(np.int64), 0, n0 - 2)
    iy = np.clip(np.floor(py).astype(np.int64), 0, n1 - 2)
    ux = px - ix
    uy = py - iy
    wx = _cubic_weights(ux)
    wy = _cubic_weights(uy)
    idx_x = [np.clip(ix + k - 1, 0, n0 - 1) for k in range(4)]
    idx_y = [np.clip(iy + k - 1, 0, n1 - 1) for k in range(4)]
    out = np.zeros(np.shape(px))
    for a in range(4):
        row = np.zeros(np.shape(px))
        for b in range(4):
            row = row + wy[b] * v[idx_x[a], idx_y[b]]
        out = out + wx[a] * row
    return out


def linear_time_pair(times: np.ndarray, t: float):
    """Index pair and blend weight for linear interpolation in time."""
    nt = len(times)
    if nt == 1:
        return 0, 0, 0.0
    dt = times[1] - times[0]
    pos = (t - times[0]) / dt
    i0 = int(np.clip(np.floor(pos), 0, nt - 2))
    u = float(np.clip(pos - i0, 0.0, 1.0))
    return i0, i0 + 1, u
