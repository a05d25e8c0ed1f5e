"""Minkowski geometry with fixed (+,-,-,-) signature.

Everything downstream (guidance, far fields, hyperplane projections) routes
its invariant products through `minkowski_dot`, so the signature choice lives
in exactly one place.  Units are hbar = c = 1 throughout; lengths and times
are measured on the 1/omega0 scale set by the run configuration.

Four-vectors are represented as numpy arrays of shape (..., 4) ordered
(t, x, y, z); components are contravariant.  `FourVector` is a thin frozen
wrapper for code that wants named fields.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

METRIC_DIAG = np.array([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class FourVector:
    t: float
    x: float
    y: float = 0.0
    z: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z], dtype=float)

    @staticmethod
    def from_array(a) -> "FourVector":
        a = np.asarray(a, dtype=float)
        return FourVector(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() + as_four(other))

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() - as_four(other))

    def square(self) -> float:
        """Minkowski square t^2 - |x|^2 (frame invariant)."""
        return float(minkowski_dot(self.as_array(), self.as_array()))


def as_four(v) -> np.ndarray:
    """Coerce a FourVector, sequence, or (...,4) array to an ndarray."""
    if isinstance(v, FourVector):
        return v.as_array()
    a = np.asarray(v, dtype=float)
    if a.shape[-1] != 4:
        raise ValueError(f"four-vector must have last axis 4, got shape {a.shape}")
    return a


def minkowski_dot(a, b) -> np.ndarray | float:
    """a.t*b.t - a.x*b.x - a.y*b.y - a.z*b.z, broadcasting over leading axes."""
    aa, bb = as_four(a), as_four(b)
    out = np.einsum("...i,...i->...", aa * METRIC_DIAG, bb)
    if out.ndim == 0:
        return float(out)
    return out


def boost_x(p, v: float):
    """Boost along x with velocity v (|v| < 1): maps lab coordinates to the
    frame moving at +v.  Preserves the Minkowski square."""
    if not abs(v) < 1.0:
        raise ValueError(f"boost velocity must satisfy |v| < 1, got {v}")
    a = as_four(p)
    gamma = 1.0 / np.sqrt(1.0 - v * v)
    out = a.copy()
    out[..., 0] = gamma * (a[..., 0] - v * a[..., 1])
    out[..., 1] = gamma * (a[..., 1] - v * a[..., 0])
    if isinstance(p, FourVector):
        return FourVector.from_array(out)
    return out


def spatial_norm(a) -> np.ndarray | float:
    aa = as_four(a)
    out = np.sqrt(np.sum(aa[..., 1:] ** 2, axis=-1))
    return float(out) if out.ndim == 0 else out


def euclid_norm(a) -> np.ndarray | float:
    aa = as_four(a)
    out = np.sqrt(np.sum(aa**2, axis=-1))
    return float(out) if out.ndim == 0 else out


def project_onto_hyperplane(xi, zdot):
    """Project xi onto the hyperplane Sigma orthogonal (Minkowski sense) to
    zdot: xi - (xi.zdot / zdot.zdot) zdot.  zdot must be non-null."""
    xi_a, zd = as_four(xi), as_four(zdot)
    denom = minkowski_dot(zd, zd)
    if np.any(np.abs(np.asarray(denom)) < 1e-30):
        raise ValueError("cannot project onto hyperplane of a null tangent")
    coeff = minkowski_dot(xi_a, zd) / denom
    out = xi_a - np.asarray(coeff)[..., None] * zd
    if isinstance(xi, FourVector):
        return FourVector.from_array(out)
    return out
