"""Adaptive Dormand-Prince 5(4) integrator with event detection.

Why not scipy.solve_ivp: trajectory runs need (i) deterministic, version-pinned
stepping for bit-reproducible outputs, (ii) events located by re-integrating
sub-steps rather than interpolating, so an event like "M^2 crosses zero" is
honored to near machine precision, and (iii) graceful truncation statuses
(min-step collapse, domain exit) instead of exceptions mid-ensemble.

States are float ndarrays.  Accepted steps are recorded with their RHS values
so cubic Hermite resampling between steps is available to callers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Dormand-Prince RK5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])

STATUS_DONE = "completed"
STATUS_EVENT = "event"
STATUS_MIN_STEP = "min_step_collapse"


@dataclass
class EventSpec:
    fn: object  # g(t, y) -> float; root at sign change
    terminal: bool = False
    name: str = "event"


@dataclass
class OdeSolution:
    status: str
    ts: np.ndarray
    ys: np.ndarray
    fs: np.ndarray
    events: list = field(default_factory=list)  # (name, t, y)
    nfev: int = 0
    message: str = ""

    def hermite(self, t_query):
        """Cubic Hermite interpolation on the accepted-step mesh."""
        tq = np.atleast_1d(np.asarray(t_query, dtype=float))
        idx = np.clip(np.searchsorted(self.ts, tq, side="right") - 1, 0, len(self.ts) - 2)
        t0 = self.ts[idx]
        h = self.ts[idx + 1] - t0
        s = np.where(h > 0, (tq - t0) / np.where(h > 0, h, 1.0), 0.0)
        y0, y1 = self.ys[idx], self.ys[idx + 1]
        f0, f1 = self.fs[idx], self.fs[idx + 1]
        s = s[:, None]
        hh = h[:, None]
        h00 = 2 * s**3 - 3 * s**2 + 1
        h10 = s**3 - 2 * s**2 + s
        h01 = -2 * s**3 + 3 * s**2
        h11 = s**3 - s**2
        out = h00 * y0 + h10 * hh * f0 + h01 * y1 + h11 * hh * f1
        if np.ndim(t_query) == 0:
            return out[0]
        return out


def _rk_step(f, t, y, h, k1=None):
    """One DP5(4) step: returns (y5, y4_err, k_stages, f_new)."""
    ks = [k1 if k1 is not None else f(t, y)]
    for i in range(1, 7):
        yi = y + h * sum(a * k for a, k in zip(_A[i], ks))
        ks.append(f(t + _C[i] * h, yi))
    ks = ks[:7]
    y5 = y + h * sum(b * k for b, k in zip(_B5, ks))
    y4 = y + h * sum(b * k for b, k in zip(_B4, ks))
    return y5, y5 - y4, ks


def _substep_state(f, t0, y0, dt, k1):
    """Integrate one plain (error-uncontrolled) DP5 step of size dt; used for
    event localization inside an already-accepted step."""
    y5, _, _ = _rk_step(f, t0, y0, dt, k1=k1)
    return y5


def integrate_adaptive(
    f,
    t0: float,
    y0,
    t_end: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    max_step: float = np.inf,
    min_step: float = 1e-13,
    events: tuple = (),
    first_step: float | None = None,
    max_steps: int = 200000,
) -> OdeSolution:
    y = np.asarray(y0, dtype=float).copy()
    t = float(t0)
    direction = 1.0 if t_end >= t0 else -1.0
    span = abs(t_end - t0)
    k1 = f(t, y)
    nfev = 1
    if first_step is None:
        y_scale = 1.0 + float(np.max(np.abs(y))) if y.size else 1.0
        f_scale = 1.0 + float(np.max(np.abs(k1)))
        h = 0.01 * y_scale / f_scale
    else:
        h = abs(first_step)
    h = min(h, max_step, span)

    ts, ys, fs = [t], [y.copy()], [np.asarray(k1, dtype=float).copy()]
    ev_vals = [np.array([e.fn(t, y) for e in events])] if events else [np.array([])]
    recorded_events = []
    status = STATUS_DONE
    message = ""

    steps = 0
    while direction * (t_end - t) > 1e-15 * max(1.0, abs(t_end)):
        if steps > max_steps:
            status = STATUS_MIN_STEP
            message = f"step budget exhausted after {steps} steps at t={t!r}"
            break
        steps += 1
        h = min(h, abs(t_end - t))
        if h < min_step:
            status = STATUS_MIN_STEP
            message = f"step collapsed below {min_step!r} at t={t!r}"
            break
        y_new, err, ks = _rk_step(f, t, y, direction * h, k1=k1)
        nfev += 6
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = np.sqrt(np.mean((err / scale) ** 2))
        if err_norm <= 1.0:
            t_new = t + direction * h
            # event scan on the accepted step
            if events:
                g_new = np.array([e.fn(t_new, y_new) for e in events])
                g_old = ev_vals[-1]
                hit = None
                for ie in range(len(events)):
                    if g_old[ie] * g_new[ie] < 0.0:
                        te, ye = _locate_event(
                            f, events[ie].fn, t, y, ks[0], direction * h, g_old[ie]
                        )
                        recorded_events.append((events[ie].name, te, ye))
                        if events[ie].terminal and hit is None:
                            hit = (te, ye)
                if hit is not None:
                    te, ye = hit
                    ts.append(te)
                    ys.append(ye)
                    fs.append(np.asarray(f(te, ye), dtype=float))
                    nfev += 1
                    status = STATUS_EVENT
                    t, y = te, ye
                    break
                ev_vals.append(g_new)
            t, y = t_new, y_new
            k1 = ks[6] if len(ks) == 7 else f(t, y)
            ts.append(t)
            ys.append(y.copy())
            fs.append(np.asarray(k1, dtype=float).copy())
            factor = min(5.0, max(0.2, 0.9 * err_norm ** (-0.2))) if err_norm > 0 else 5.0
            h = min(h * factor, max_step)
        else:
            h *= max(0.2, 0.9 * err_norm ** (-0.2))
    return OdeSolution(
        status=status,
        ts=np.array(ts),
        ys=np.array(ys),
        fs=np.array(fs),
        events=recorded_events,
        nfev=nfev,
        message=message,
    )


def _locate_event(f, gfn, t0, y0, k1, h_signed, g0, iters: int = 80):
    """Bisection for the event root inside one accepted step.

    Candidate states are produced by re-running a single DP5 sub-step from the
    step's left endpoint, so the located state satisfies the ODE to the same
    order as the integration itself."""
    lo, hi = 0.0, 1.0
    g_lo = g0
    if g_lo == 0.0:
        return t0, np.asarray(y0, dtype=float).copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        y_mid = _substep_state(f, t0, y0, h_signed * mid, k1)
        g_mid = gfn(t0 + h_signed * mid, y_mid)
        if g_mid == 0.0:
            lo = hi = mid
            break
        if g_lo * g_mid < 0.0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
        if hi - lo < 1e-15:
            break
    frac = 0.5 * (lo + hi)
    y_ev = _substep_state(f, t0, y0, h_signed * frac, k1)
    return t0 + h_signed * frac, y_ev
