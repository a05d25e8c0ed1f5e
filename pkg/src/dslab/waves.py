"""Analytic guiding waves and the hydrodynamic quantities derived from them.

Every wave exposes the same small protocol used by the trajectory and field
machinery:

    psi_and_dpsi(t, xyz) -> (psi, dpsi)   coordinate derivatives (d_t, d_x, d_y, d_z)
    amp_phase(t, xyz)    -> (a, S)        polar form Psi = a exp(iS)
    grad_phase_four(...) -> contravariant d^mu S, shape (..., 4)
    guidance_w(...)      -> w = -(d^mu S + e A^mu) and its Minkowski square

The Minkowski square of w is the squared variable mass M^2 = (dS + eA)^2 of
the Hamilton-Jacobi equation; for exact Klein-Gordon solutions it coincides
with omega0^2 + Q where Q = box(a)/a is the quantum potential.  Both routes
are implemented so tests can play them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DispersionError, MaskedNodeError
from .grids import GridSpec, ComplexScalarField
from .minkowski import minkowski_dot
from .potentials import ExternalPotential, ZERO_POTENTIAL

PSI_FLOOR = 1e-12  # |psi| below this has no usable phase gradient


def _xyz(x) -> np.ndarray:
    """Accept scalar x, (...,3) arrays, or four-vectors (...,4) -> (t, xyz)."""
    a = np.asarray(x, dtype=float)
    if a.ndim == 0:
        out = np.zeros(3)
        out[0] = a
        return out
    if a.shape[-1] == 3:
        return a
    if a.shape[-1] == 4:
        return a[..., 1:]
    raise ValueError(f"expected spatial (...,3) or four-vector (...,4), got {a.shape}")


def grad_four_from_coordinate(d_t, d_x, d_y=None, d_z=None) -> np.ndarray:
    """Assemble contravariant d^mu from coordinate derivatives (d_t, grad)."""
    d_t = np.asarray(d_t, dtype=float)
    out = np.zeros(d_t.shape + (4,))
    out[..., 0] = d_t
    out[..., 1] = -np.asarray(d_x)
    if d_y is not None:
        out[..., 2] = -np.asarray(d_y)
    if d_z is not None:
        out[..., 3] = -np.asarray(d_z)
    return out


class AnalyticWave:
    """Base: closed-form psi plus derived hydrodynamics."""

    omega0: float
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "klein_gordon"
    truth: dict

    def psi_and_dpsi(self, t, xyz):
        raise NotImplementedError

    def psi(self, t, x):
        return self.psi_and_dpsi(t, _xyz(x))[0]

    def amp_phase(self, t, x):
        xyz = _xyz(x)
        p, _ = self.psi_and_dpsi(t, xyz)
        return np.abs(p), np.angle(p)

    def grad_phase_four(self, t, x) -> np.ndarray:
        """Contravariant d^mu S = (d_t S, -grad S) from Im(d psi / psi)."""
        xyz = _xyz(x)
        p, dp = self.psi_and_dpsi(t, xyz)
        p = np.asarray(p)
        if np.any(np.abs(p) < PSI_FLOOR * max(1.0, float(np.max(np.abs(p))))):
            raise MaskedNodeError("phase gradient requested at an amplitude node")
        ds = np.imag(dp / p[..., None])
        out = np.array(ds)
        out[..., 1:] *= -1.0
        return out

    def guidance_w(self, t, x):
        """w^mu = -(d^mu S + e A^mu) and m2 = w.w (the squared variable mass)."""
        xyz = _xyz(x)
        grad = self.grad_phase_four(t, xyz)
        w = -(grad + self.potential.e_four(t, xyz))
        return w, minkowski_dot(w, w)

    def m_squared(self, t, x):
        return self.guidance_w(t, x)[1]

    def sample(self, grid: GridSpec, t: float) -> ComplexScalarField:
        mesh = grid.meshgrid()
        xyz = np.zeros(grid.shape + (3,))
        for i, m in enumerate(mesh):
            xyz[..., i] = m
        return ComplexScalarField(grid, self.psi_and_dpsi(t, xyz)[0], time_label=t)


@dataclass
class PlaneWave(AnalyticWave):
    """Psi = exp(i(kx - w t)), w = sqrt(omega0^2 + k^2): M^2 = omega0^2 exactly."""

    omega0: float
    k: float = 0.0
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "klein_gordon"

    def __post_init__(self):
        self.omega = float(np.sqrt(self.omega0**2 + self.k**2))
        self.truth = {"omega": self.omega, "m2": self.omega0**2, "velocity": self.k / self.omega}

    def phase(self, t, xyz):
        return self.k * xyz[..., 0] - self.omega * np.asarray(t)

    def psi_and_dpsi(self, t, xyz):
        p = np.exp(1j * self.phase(t, xyz))
        dp = np.zeros(np.shape(p) + (4,), dtype=complex)
        dp[..., 0] = -1j * self.omega * p
        dp[..., 1] = 1j * self.k * p
        return p, dp


@dataclass
class StandingWave(AnalyticWave):
    """Psi = A cos(kx) e^{-iwt}, w = sqrt(omega0^2 + k^2): Q = k^2, particles at rest."""

    omega0: float
    k: float
    amplitude: float = 1.0
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "klein_gordon"

    def __post_init__(self):
        self.omega = float(np.sqrt(self.omega0**2 + self.k**2))
        self.truth = {"omega": self.omega, "m2": self.omega**2, "q": self.k**2}

    def psi_and_dpsi(self, t, xyz):
        x = xyz[..., 0]
        osc = np.exp(-1j * self.omega * np.asarray(t))
        p = self.amplitude * np.cos(self.k * x) * osc
        dp = np.zeros(np.shape(p) + (4,), dtype=complex)
        dp[..., 0] = -1j * self.omega * p
        dp[..., 1] = -self.amplitude * self.k * np.sin(self.k * x) * osc
        return p, dp


@dataclass
class EvanescentWave(AnalyticWave):
    """Psi = A e^{s kappa x} e^{-iwt} with w = sqrt(omega0^2 - kappa^2).

    For kappa >= omega0 there is no oscillating solution; tachyon_test mode
    keeps the growing profile with omega = 0 so the amplitude-side oracle
    M^2 = omega0^2 - kappa^2 < 0 can still be probed."""

    omega0: float
    kappa: float
    sign: int = 1
    tachyon_test: bool = False
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "klein_gordon"

    def __post_init__(self):
        if self.kappa >= self.omega0 and not self.tachyon_test:
            raise DispersionError(
                f"evanescent wave needs kappa < omega0 (got kappa={self.kappa}, "
                f"omega0={self.omega0}); pass tachyon_test=True to probe M^2 < 0"
            )
        self.omega = 0.0 if self.tachyon_test else float(np.sqrt(self.omega0**2 - self.kappa**2))
        self.truth = {"omega": self.omega, "m2": self.omega0**2 - self.kappa**2, "q": -self.kappa**2}

    def psi_and_dpsi(self, t, xyz):
        x = xyz[..., 0]
        p = np.exp(self.sign * self.kappa * x) * np.exp(-1j * self.omega * np.asarray(t))
        dp = np.zeros(np.shape(p) + (4,), dtype=complex)
        dp[..., 0] = -1j * self.omega * p
        dp[..., 1] = self.sign * self.kappa * p
        return p, dp


@dataclass
class BoostedMonopolePhase(AnalyticWave):
    """Phase factor of the boosted monopole: Psi = e^{-i omega0 gamma (t - v x)}.

    A plane-wave Klein-Gordon solution; its guidance flow is the uniform
    velocity v, which is how the moving-source far field stays synchronized."""

    omega0: float
    v: float
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "klein_gordon"

    def __post_init__(self):
        if not abs(self.v) < 1.0:
            raise DispersionError(f"boost velocity must satisfy |v| < 1, got {self.v}")
        self.gamma = 1.0 / float(np.sqrt(1.0 - self.v**2))
        self.truth = {"m2": self.omega0**2, "velocity": self.v}

    def phase(self, t, xyz):
        return -self.omega0 * self.gamma * (np.asarray(t) - self.v * xyz[..., 0])

    def psi_and_dpsi(self, t, xyz):
        p = np.exp(1j * self.phase(t, xyz))
        dp = np.zeros(np.shape(p) + (4,), dtype=complex)
        dp[..., 0] = -1j * self.omega0 * self.gamma * p
        dp[..., 1] = 1j * self.omega0 * self.gamma * self.v * p
        return p, dp


@dataclass
class TwoPlaneWave(AnalyticWave):
    """Psi = e^{-iwt}(e^{ikx} + eps e^{-ikx}): interference fringes whose minima
    host tachyonic pockets once k(1+eps)/(1-eps) exceeds w."""

    omega0: float
    k: float
    eps: float
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "klein_gordon"

    def __post_init__(self):
        if not 0.0 <= self.eps < 1.0:
            raise DispersionError(f"two-plane eps must be in [0,1), got {self.eps}")
        self.omega = float(np.sqrt(self.omega0**2 + self.k**2))
        smax = self.k * (1.0 + self.eps) / (1.0 - self.eps)
        self.truth = {
            "omega": self.omega,
            "max_phase_gradient": smax,
            "has_tachyonic_region": smax > self.omega,
        }

    def psi_and_dpsi(self, t, xyz):
        x = xyz[..., 0]
        osc = np.exp(-1j * self.omega * np.asarray(t))
        gp = np.exp(1j * self.k * x)
        gm = np.exp(-1j * self.k * x)
        p = (gp + self.eps * gm) * osc
        dp = np.zeros(np.shape(p) + (4,), dtype=complex)
        dp[..., 0] = -1j * self.omega * p
        dp[..., 1] = 1j * self.k * (gp - self.eps * gm) * osc
        return p, dp

    def phase_gradient_x(self, x):
        a2 = 1.0 + self.eps**2 + 2.0 * self.eps * np.cos(2.0 * self.k * np.asarray(x))
        return self.k * (1.0 - self.eps**2) / a2

    def m2_of_x(self, x):
        return self.omega**2 - self.phase_gradient_x(x) ** 2


@dataclass
class GaussianPacketNR(AnalyticWave):
    """Free nonrelativistic Gaussian packet with the rest-clock phase attached:
    Psi = e^{-i omega0 t} psi_sch(x, t), m = omega0.

    psi_sch is the standard spreading Gaussian with sigma(t) =
    sigma0 sqrt(1 + (t / 2 m sigma0^2)^2).  All derivatives are closed form,
    so trajectories through it make clean convergence-study targets."""

    omega0: float
    sigma0: float = 1.0
    x0: float = 0.0
    p0: float = 0.0
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "schrodinger"

    def __post_init__(self):
        self.truth = {"sigma0": self.sigma0, "p0": self.p0, "m": self.omega0}

    def sigma_t(self, t):
        tau = np.asarray(t) / (2.0 * self.omega0 * self.sigma0**2)
        return self.sigma0 * np.sqrt(1.0 + tau**2)

    def _pieces(self, t, x):
        m, s0, p0 = self.omega0, self.sigma0, self.p0
        c = 1.0 / (2.0 * m * s0**2)
        tau = np.asarray(t) * c
        w = 1.0 + tau**2
        X = x - self.x0 - p0 * np.asarray(t) / m
        return m, s0, p0, c, tau, w, X

    def amp_phase_sch(self, t, x):
        m, s0, p0, c, tau, w, X = self._pieces(t, x)
        a = (2.0 * np.pi * s0**2) ** -0.25 * w**-0.25 * np.exp(-(X**2) / (4.0 * s0**2 * w))
        s = (
            tau * X**2 / (4.0 * s0**2 * w)
            + p0 * (x - self.x0)
            - p0**2 * np.asarray(t) / (2.0 * m)
            - 0.5 * np.arctan(tau)
        )
        return a, s

    def grads_sch(self, t, x):
        """(d_t S, d_x S, d_t a, d_x a) of the Schroedinger factor."""
        m, s0, p0, c, tau, w, X = self._pieces(t, x)
        a, _ = self.amp_phase_sch(t, x)
        sx = tau * X / (2.0 * s0**2 * w) + p0
        st = (
            c * (1.0 - tau**2) / w**2 * X**2 / (4.0 * s0**2)
            - tau * X * p0 / (2.0 * s0**2 * w * m)
            - p0**2 / (2.0 * m)
            - 0.5 * c / w
        )
        ax = a * (-X / (2.0 * s0**2 * w))
        at = a * (
            -0.25 * 2.0 * tau * c / w
            + (X**2 * 2.0 * tau * c) / (4.0 * s0**2 * w**2)
            - 2.0 * X * (-p0 / m) / (4.0 * s0**2 * w)
        )
        return st, sx, at, ax

    def psi_and_dpsi(self, t, xyz):
        x = xyz[..., 0]
        a, s_sch = self.amp_phase_sch(t, x)
        s = s_sch - self.omega0 * np.asarray(t)
        st, sx, at, ax = self.grads_sch(t, x)
        p = a * np.exp(1j * s)
        dp = np.zeros(np.shape(p) + (4,), dtype=complex)
        dp[..., 0] = (at + 1j * (st - self.omega0) * a) * np.exp(1j * s)
        dp[..., 1] = (ax + 1j * sx * a) * np.exp(1j * s)
        return p, dp

    def phase(self, t, xyz):
        x = np.asarray(xyz)[..., 0] if np.ndim(xyz) else xyz
        _, s_sch = self.amp_phase_sch(t, x)
        return s_sch - self.omega0 * np.asarray(t)


@dataclass
class Superposition(AnalyticWave):
    """Linear combination of analytic waves sharing one omega0."""

    waves: tuple
    coeffs: tuple
    potential: ExternalPotential = ZERO_POTENTIAL
    regime: str = "klein_gordon"

    def __post_init__(self):
        self.omega0 = self.waves[0].omega0
        self.truth = {"n_components": len(self.waves)}

    def psi_and_dpsi(self, t, xyz):
        p = None
        dp = None
        for wv, c in zip(self.waves, self.coeffs):
            pi, dpi = wv.psi_and_dpsi(t, xyz)
            p = c * pi if p is None else p + c * pi
            dp = c * dpi if dp is None else dp + c * dpi
        return p, dp


REFERENCE_KINDS = {
    "plane": PlaneWave,
    "standing": StandingWave,
    "evanescent": EvanescentWave,
    "boosted_monopole_phase": BoostedMonopolePhase,
    "two_plane": TwoPlaneWave,
    "gaussian_packet": GaussianPacketNR,
}


def make_reference_wave(kind: str, **params) -> AnalyticWave:
    """Construct an analytic reference wave; dispersion-inconsistent parameter
    sets raise DispersionError.  The returned object carries analytic-truth
    metadata in .truth for tests."""
    if kind not in REFERENCE_KINDS:
        raise DispersionError(f"unknown reference wave kind {kind!r}; have {sorted(REFERENCE_KINDS)}")
    if kind in ("standing", "evanescent") and "omega" in params:
        # Callers may assert the pulsation they expect; verify it.
        omega = params.pop("omega")
        wave = REFERENCE_KINDS[kind](**params)
        if abs(wave.omega - omega) > 1e-12 * max(1.0, abs(omega)):
            raise DispersionError(
                f"inconsistent dispersion parameters: expected omega={wave.omega!r}, got {omega!r}"
            )
        return wave
    return REFERENCE_KINDS[kind](**params)


def fd_grad_phase_four(wave, t, x, h: float = 1e-5) -> np.ndarray:
    """Finite-difference contravariant d^mu S; oracle for the closed forms.

    Uses the complex field itself (Im dpsi/psi) so it stays valid across
    phase wraps."""
    xyz = _xyz(x)

    def phase_diff(pa, pb):
        return np.angle(pb / pa)

    out = np.zeros(np.shape(xyz)[:-1] + (4,))
    p0, _ = wave.psi_and_dpsi(t, xyz)
    pm, _ = wave.psi_and_dpsi(t - h, xyz)
    pp, _ = wave.psi_and_dpsi(t + h, xyz)
    out[..., 0] = phase_diff(pm, pp) / (2 * h)
    for i in range(3):
        dxp = xyz.copy()
        dxm = xyz.copy()
        dxp[..., i] += h
        dxm[..., i] -= h
        pp, _ = wave.psi_and_dpsi(t, dxp)
        pm, _ = wave.psi_and_dpsi(t, dxm)
        out[..., 1 + i] = -phase_diff(pm, pp) / (2 * h)
    return out


@dataclass
class MassSquaredReport:
    """Both routes to M^2 at a point, per the Hamilton-Jacobi split."""

    m2_quantum: float  # omega0^2 + Q
    m2_gradient: float  # (dS + eA).(dS + eA)
    grad: np.ndarray  # contravariant d^mu S + e A^mu
    q: float
    valid: bool

    def consistent(self, tol: float) -> bool:
        scale = max(abs(self.m2_quantum), abs(self.m2_gradient), 1e-30)
        return abs(self.m2_quantum - self.m2_gradient) <= tol * scale


def variable_mass_squared(wave, t, x, h: float = 1e-4) -> MassSquaredReport:
    """M^2 = omega0^2 + Q at (t, x), plus the gradient-side value.

    Q is taken from the wave's analytic truth when it is constant, otherwise
    from centered second differences of the amplitude."""
    xyz = _xyz(x)
    truth = getattr(wave, "truth", {})
    if "q" in truth:
        q = float(truth["q"])
    elif "m2" in truth and truth.get("m2") is not None and "q" not in truth:
        q = float(truth["m2"]) - wave.omega0**2
    else:
        q = _fd_quantum_potential(wave, t, xyz, h)
    grad = wave.grad_phase_four(t, xyz) + wave.potential.e_four(t, xyz)
    m2_grad = float(minkowski_dot(grad, grad))
    amp = np.abs(wave.psi_and_dpsi(t, xyz)[0])
    valid = bool(np.all(amp > PSI_FLOOR))
    return MassSquaredReport(
        m2_quantum=wave.omega0**2 + q,
        m2_gradient=m2_grad,
        grad=grad,
        q=q,
        valid=valid,
    )


def _fd_quantum_potential(wave, t, xyz, h: float) -> float:
    def amp(tt, pos):
        return np.abs(wave.psi_and_dpsi(tt, pos)[0])

    a0 = amp(t, xyz)
    dtt = (amp(t + h, xyz) - 2.0 * a0 + amp(t - h, xyz)) / h**2
    lap = 0.0
    for i in range(3):
        dp = np.array(xyz, dtype=float)
        dm = np.array(xyz, dtype=float)
        dp[..., i] += h
        dm[..., i] -= h
        lap = lap + (amp(t, dp) - 2.0 * a0 + amp(t, dm)) / h**2
    return float((dtt - lap) / a0)
