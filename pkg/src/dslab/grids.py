"""Spacetime grids, complex field storage, stencils, and the quantum potential.

Fields are sampled on uniform rectangular grids (1-3 spatial dimensions) and
stored row-major with axis order (x, y, z).  The polar decomposition and the
quantum potential Q = box(a)/a are only meaningful where the amplitude is
comfortably above the noise floor, so both return explicit validity masks
instead of silently zeroing bad points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FieldError

# Points with a <= AMPLITUDE_FLOOR_FACTOR * max|a| have no trustworthy phase.
AMPLITUDE_FLOOR_FACTOR = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """Uniform spatial grid: per-axis (min, max, n) plus the time step."""

    extents: tuple[tuple[float, float, int], ...]
    dt: float

    def __post_init__(self):
        if not 1 <= len(self.extents) <= 3:
            raise FieldError(f"grid must have 1..3 spatial dimensions, got {len(self.extents)}")
        for lo, hi, n in self.extents:
            if n < 8:
                raise FieldError(f"grid needs n >= 8 per axis, got {n}")
            if not hi > lo:
                raise FieldError(f"grid extent must have max > min, got ({lo}, {hi})")
        if not self.dt > 0:
            raise FieldError(f"dt must be positive, got {self.dt}")

    @property
    def dims(self) -> int:
        return len(self.extents)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n for _, _, n in self.extents)

    def axis(self, i: int) -> np.ndarray:
        lo, hi, n = self.extents[i]
        return np.linspace(lo, hi, n)

    def spacing(self, i: int) -> float:
        lo, hi, n = self.extents[i]
        return (hi - lo) / (n - 1)

    def axes(self) -> list[np.ndarray]:
        return [self.axis(i) for i in range(self.dims)]

    def meshgrid(self) -> list[np.ndarray]:
        return list(np.meshgrid(*self.axes(), indexing="ij"))


@dataclass
class ComplexScalarField:
    """Complex samples on a GridSpec at one time slice."""

    grid: GridSpec
    values: np.ndarray
    time_label: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.shape != self.grid.shape:
            raise FieldError(
                f"field shape {self.values.shape} does not match grid {self.grid.shape}"
            )

    def amplitude_floor(self) -> float:
        return AMPLITUDE_FLOOR_FACTOR * float(np.max(np.abs(self.values)))


def second_derivative(values: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """Centered second derivative, one-sided second-order at the boundaries."""
    v = np.moveaxis(np.asarray(values, dtype=complex), axis, 0)
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h**2
    out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h**2
    out[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / h**2
    if not np.iscomplexobj(np.asarray(values)):
        out = out.real
    return np.moveaxis(out, 0, axis)


def first_derivative(values: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """Centered first derivative, one-sided second-order at the boundaries."""
    v = np.moveaxis(np.asarray(values, dtype=complex), axis, 0)
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
    out[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)
    if not np.iscomplexobj(np.asarray(values)):
        out = out.real
    return np.moveaxis(out, 0, axis)


def laplacian(values: np.ndarray, spacings: tuple[float, ...]) -> np.ndarray:
    out = np.zeros_like(np.asarray(values, dtype=float) if not np.iscomplexobj(values) else values)
    for ax, h in enumerate(spacings):
        out = out + second_derivative(values, h, axis=ax)
    return out


def polar_decompose(f: ComplexScalarField):
    """Split f into (amplitude, unwrapped phase, valid mask).

    The phase is unwrapped along each grid axis in turn; points with
    amplitude at or below the floor are masked and their phase must not be
    trusted.  Reconstruction a*exp(i*phi) matches the input to roundoff on
    the valid mask.
    """
    vals = f.values
    a = np.abs(vals)
    amax = float(np.max(a))
    if amax == 0.0:
        raise FieldError("no phase defined: field is identically zero")
    floor = AMPLITUDE_FLOOR_FACTOR * amax
    phi = np.angle(vals)
    for ax in range(phi.ndim):
        phi = np.unwrap(phi, axis=ax)
    valid = a > floor
    return a, phi, valid


def quantum_potential(
    a: np.ndarray,
    spacings: tuple[float, ...],
    *,
    dt: float | None = None,
    a_prev: np.ndarray | None = None,
    a_next: np.ndarray | None = None,
    static: bool = False,
):
    """Quantum potential Q = (d_tt - laplacian) a / a on the grid.

    A time-series (a_prev, a, a_next) supplies the centered d_tt term; pass
    static=True to zero it for stationary amplitudes.  Returns (Q, valid)
    where points with a <= floor are flagged invalid rather than zeroed.
    """
    a = np.asarray(a, dtype=float)
    if static:
        dtt = np.zeros_like(a)
    else:
        if a_prev is None or a_next is None or dt is None:
            raise FieldError("quantum_potential needs (a_prev, a_next, dt) unless static=True")
        dtt = (np.asarray(a_next, dtype=float) - 2.0 * a + np.asarray(a_prev, dtype=float)) / dt**2
    lap = laplacian(a, spacings)
    amax = float(np.max(np.abs(a)))
    if amax == 0.0:
        raise FieldError("quantum potential undefined: amplitude identically zero")
    floor = AMPLITUDE_FLOOR_FACTOR * amax
    valid = a > floor
    q = np.full_like(a, np.nan)
    np.divide(dtt - lap, a, out=q, where=valid)
    return q, valid
