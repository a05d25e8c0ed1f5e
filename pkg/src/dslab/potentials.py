"""External scalar/vector potentials A = [V, A_vec] with coupling charge e.

Potentials are plain callables of (t, xyz) where xyz has shape (..., 3);
they must be finite everywhere on the grids they are used with.  Builders
cover the scenario needs: localized barriers (optionally time-gated) and the
linear vector potential used for constant-field force checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


def _zero_scalar(t, xyz):
    return np.zeros(np.shape(xyz)[:-1])


def _zero_vector(t, xyz):
    return np.zeros(np.shape(xyz))


@dataclass(frozen=True)
class ExternalPotential:
    """Four-potential with contravariant components (V, A_vec)."""

    v: Callable = _zero_scalar
    a_vec: Callable = _zero_vector
    e: float = 0.0
    label: str = "zero"

    def four(self, t, xyz) -> np.ndarray:
        """Contravariant A^mu = (V, Ax, Ay, Az) at (t, xyz)."""
        xyz = np.asarray(xyz, dtype=float)
        out = np.zeros(xyz.shape[:-1] + (4,))
        out[..., 0] = self.v(t, xyz)
        out[..., 1:] = self.a_vec(t, xyz)
        return out

    def e_four(self, t, xyz) -> np.ndarray:
        return self.e * self.four(t, xyz)


ZERO_POTENTIAL = ExternalPotential()


def gaussian_barrier(
    amplitude: float,
    center: float = 0.0,
    width: float = 1.0,
    t_on: float | None = None,
    t_off: float | None = None,
    t_ramp: float = 0.0,
) -> ExternalPotential:
    """Localized repulsive barrier V(x) = amplitude * exp(-(x-c)^2 / 2 w^2),
    optionally gated on at t_on (off at t_off).

    t_ramp > 0 switches on through a C1 smootherstep over that duration; a
    hard gate (default) injects a high-k splash into the wave, which matters
    when remote regions must stay numerically quiet."""

    def gate_fn(t):
        t = np.asarray(t, dtype=float)
        gate = np.ones(np.shape(t))
        if t_on is not None:
            if t_ramp > 0.0:
                s = np.clip((t - t_on) / t_ramp, 0.0, 1.0)
                gate = gate * (3.0 * s**2 - 2.0 * s**3)
            else:
                gate = gate * (t >= t_on)
        if t_off is not None:
            gate = gate * (t < t_off)
        return gate

    def v(t, xyz):
        xyz = np.asarray(xyz, dtype=float)
        x = xyz[..., 0]
        val = amplitude * np.exp(-((x - center) ** 2) / (2.0 * width**2))
        return val * gate_fn(t)

    label = (
        f"gaussian_barrier(amp={amplitude!r},center={center!r},width={width!r},"
        f"t_on={t_on!r},t_off={t_off!r},t_ramp={t_ramp!r})"
    )
    return ExternalPotential(v=v, e=1.0, label=label)


def rotational_vector_potential(kappa: float, e: float = 1.0) -> ExternalPotential:
    """e*A_vec = (-kappa*y, +kappa*x, 0)/e: a uniform-F analog whose guidance
    flow is exactly circular, used as the Lorentz-force cross-check."""

    def a_vec(t, xyz):
        xyz = np.asarray(xyz, dtype=float)
        out = np.zeros(np.shape(xyz))
        out[..., 0] = -kappa / e * xyz[..., 1]
        out[..., 1] = kappa / e * xyz[..., 0]
        return out

    return ExternalPotential(a_vec=a_vec, e=e, label=f"rotational(kappa={kappa!r})")


def constant_scalar(value: float, e: float = 1.0) -> ExternalPotential:
    def v(t, xyz):
        return np.full(np.shape(xyz)[:-1], value)

    return ExternalPotential(v=v, e=e, label=f"constant_v({value!r})")
