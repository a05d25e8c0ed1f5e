"""Soliton near-field: Lane-Emden profiles, the radial oscillating profile,
collective coordinates alpha(lambda), B(lambda), the local quadratic phase,
and the tachyonic (X-shaped) profile.

The fifth-power profile

    F_alpha(r) = (sqrt(alpha) g0 / 4 pi) / sqrt(alpha^2 r^2 + l0^2)

solves lap f = -(3 l0^2 / (g0/4pi)^4) f^5 exactly for every alpha > 0 and
carries the dilation family F_alpha(r) = sqrt(alpha) F_1(alpha r).  With a
constant mass omega attached, the radial equation

    F'' + 2 F'/r + (3 l0^2/(g0/4pi)^4) F^5 + omega^2 F = 0

interpolates between that core and the monopole cos(omega r)/r envelope; it
is solved as a regular-center initial value problem (series start at r=0,
which is the shooting form of the boundary-value problem).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rk
from .errors import DslabError, FieldError
from .minkowski import minkowski_dot, project_onto_hyperplane

NEAR_FIELD_RADIUS_FACTOR = 0.1  # phase-harmony valid for r < 0.1 / omega0
TACHYON_BAND_FACTOR = 0.5  # exclusion half-width around the singular hyperboloid


@dataclass(frozen=True)
class SolitonParams:
    g0: float
    l0: float
    omega0: float

    def __post_init__(self):
        if self.g0 <= 0 or self.l0 <= 0:
            raise DslabError("soliton needs g0 > 0 and l0 > 0")
        if self.l0 > 0.01 / self.omega0:
            raise DslabError(
                f"core radius must satisfy l0 <= 0.01/omega0 "
                f"(l0={self.l0!r}, omega0={self.omega0!r})"
            )

    @property
    def coupling_scale(self) -> float:
        return self.g0 / (4.0 * np.pi)

    @property
    def nonlinearity(self) -> float:
        """Coefficient of f^5 in the field equation."""
        return 3.0 * self.l0**2 / self.coupling_scale**4


def normalized_params(alpha_ok: bool = True) -> SolitonParams:
    """g0 = 4 pi, l0 = 1 yields F_1(r) = 1/sqrt(1+r^2) with lap F = -3 F^5;
    omega0 is scaled so the l0 constraint is honored."""
    return SolitonParams(g0=4.0 * np.pi, l0=1.0, omega0=0.01)


def lane_emden_profile(params: SolitonParams, alpha: float, r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return np.sqrt(alpha) * params.coupling_scale / np.sqrt(alpha**2 * r**2 + params.l0**2)


def lane_emden_profile_derivatives(params: SolitonParams, alpha: float, r):
    """(F, F', F'') closed forms for the analytic residual mode."""
    r = np.asarray(r, dtype=float)
    c = np.sqrt(alpha) * params.coupling_scale
    s = alpha**2 * r**2 + params.l0**2
    f = c / np.sqrt(s)
    fp = -c * alpha**2 * r * s**-1.5
    fpp = -c * alpha**2 * s**-1.5 + 3.0 * c * alpha**4 * r**2 * s**-2.5
    return f, fp, fpp


def lane_emden_residual(
    params: SolitonParams, alpha: float, r_grid, mode: str = "analytic", exponent: int = 5
):
    """Residual of lap f + k f^p = 0 for the dilation profile.

    mode='analytic' uses closed-form derivatives (residual at roundoff for
    the true exponent p=5); mode='fd' uses centered differences on r_grid.
    The radial Laplacian is f'' + 2 f'/r, so r=0 must not be on the grid.
    """
    r = np.asarray(r_grid, dtype=float)
    if np.any(r <= 0):
        raise DslabError("lane_emden_residual needs r > 0 (radial Laplacian has 2 f'/r)")
    k = params.nonlinearity
    if mode == "analytic":
        f, fp, fpp = lane_emden_profile_derivatives(params, alpha, r)
        lap = fpp + 2.0 * fp / r
    elif mode == "fd":
        dr = r[1] - r[0]
        f = lane_emden_profile(params, alpha, r)
        lap = np.gradient(np.gradient(f, dr), dr)  # placeholder, replaced below
        # centered stencil away from ends (ends use one-sided, order 2)
        from .grids import first_derivative, second_derivative

        fp = first_derivative(f, dr)
        fpp = second_derivative(f, dr)
        lap = fpp + 2.0 * fp / r
    else:
        raise DslabError(f"unknown residual mode {mode!r}")
    return lap + k * f**exponent


def lane_emden_residual_relative(params, alpha, r_grid, **kw) -> float:
    res = lane_emden_residual(params, alpha, r_grid, **kw)
    f = lane_emden_profile(params, alpha, np.asarray(r_grid, dtype=float))
    scale = float(np.max(params.nonlinearity * f**5))
    return float(np.max(np.abs(res)) / scale)


@dataclass
class RadialProfile:
    r: np.ndarray
    f: np.ndarray
    params: SolitonParams
    omega: float
    alpha: float

    def interpolation_reference(self, r=None) -> np.ndarray:
        """The near/far interpolating profile F_alpha(r) cos(omega r)."""
        rr = self.r if r is None else np.asarray(r, dtype=float)
        return lane_emden_profile(self.params, self.alpha, rr) * np.cos(self.omega * rr)


def solve_radial_profile(
    params: SolitonParams,
    omega: float,
    r_max: float,
    alpha: float = 1.0,
    n_out: int = 4000,
    rtol: float = 1e-11,
) -> RadialProfile:
    """Regular-center solution of the radial profile equation.

    Starts from the r->0 series F = F0 + F2 r^2 (regularity fixes F'(0)=0 and
    F2 = -(k F0^5 + omega^2 F0)/6 with F0 = sqrt(alpha) g0/(4 pi l0)) and
    integrates outward adaptively.  Raises with bracketing diagnostics if the
    integration collapses.
    """
    if omega * params.l0 > 0.1:
        raise DslabError(
            f"radial solver assumes omega*l0 <= 0.1, got {omega * params.l0!r}"
        )
    k = params.nonlinearity
    f0 = float(lane_emden_profile(params, alpha, 0.0))
    f2 = -(k * f0**5 + omega**2 * f0) / 6.0
    r0 = 1e-4 * params.l0 / alpha

    def rhs(r, y):
        f, fp = y
        return np.array([fp, -2.0 * fp / r - k * f**5 - omega**2 * f])

    y0 = np.array([f0 + f2 * r0**2, 2.0 * f2 * r0])
    sol = rk.integrate_adaptive(
        rhs, r0, y0, t_end=r_max, rtol=rtol, atol=1e-14 * f0, max_steps=2000000,
        first_step=r0 * 0.1,
    )
    if sol.status != rk.STATUS_DONE:
        raise DslabError(
            f"radial profile integration failed: {sol.status} ({sol.message}); "
            f"reached r={sol.ts[-1]!r} of {r_max!r} with F={sol.ys[-1, 0]!r}"
        )
    r_out = np.linspace(r0, r_max, n_out)
    f_out = sol.hermite(r_out)[:, 0]
    return RadialProfile(r=r_out, f=f_out, params=params, omega=omega, alpha=alpha)


def write_radial_csv(path, profile: RadialProfile, config_hash: str = "", tool_version: str = ""):
    """Two-column (r, F) export of a radial profile."""
    lines = [f"# config_hash={config_hash} tool_version={tool_version} omega={profile.omega!r} alpha={profile.alpha!r}"]
    lines.append("r,f")
    for r, f in zip(profile.r, profile.f):
        lines.append(f"{float(r)!r},{float(f)!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def alpha_evolution(m2_samples, omega0: float) -> np.ndarray:
    """alpha(lambda) = sqrt(|M(lambda)| / omega0) with the asymptotic
    normalization alpha(-inf) = 1, M(-inf) = omega0."""
    m = np.sqrt(np.abs(np.asarray(m2_samples, dtype=float)))
    return np.sqrt(m / omega0)


def coupling_evolution(m2_samples, omega0: float, g0: float) -> np.ndarray:
    """g(lambda) = g0 / sqrt(alpha(lambda))."""
    return g0 / np.sqrt(alpha_evolution(m2_samples, omega0))


def b_evolution(lam, m2_samples, mass_eps: float = 0.0):
    """B(lambda) = d sqrt|M^2| / d lambda / 2, centered differences.

    Returns (B, valid): samples inside the critical band carry a kink of
    sqrt|.| and are flagged invalid rather than differentiated through."""
    lam = np.asarray(lam, dtype=float)
    m = np.sqrt(np.abs(np.asarray(m2_samples, dtype=float)))
    b = np.full_like(m, np.nan)
    b[1:-1] = 0.5 * (m[2:] - m[:-2]) / (lam[2:] - lam[:-2])
    # one-sided second order at the ends (uniform-stride assumption there)
    b[0] = 0.5 * (-3.0 * m[0] + 4.0 * m[1] - m[2]) / (lam[2] - lam[0])
    b[-1] = 0.5 * (3.0 * m[-1] - 4.0 * m[-2] + m[-3]) / (lam[-1] - lam[-3])
    valid = np.abs(np.asarray(m2_samples)) > mass_eps
    # a sign change of m2 between neighbors also invalidates the stencil
    m2 = np.asarray(m2_samples)
    interior_bad = np.zeros_like(valid)
    interior_bad[1:-1] = (m2[2:] * m2[:-2]) < 0
    return b, valid & ~interior_bad


def compression_identity_residual(lam, m2_samples) -> float:
    """Max residual of 3B/M = d/dlam ln(f^2 M) with f^2 proportional to alpha:
    both sides reduce to (3/2) Mdot/M, so this cross-checks the alpha and B
    pipelines at the differencing order."""
    lam = np.asarray(lam, dtype=float)
    m2 = np.asarray(m2_samples, dtype=float)
    m = np.sqrt(np.abs(m2))
    alpha = alpha_evolution(m2, omega0=1.0)  # omega0 cancels in the log-derivative
    b, valid = b_evolution(lam, m2)
    lhs = 3.0 * b / m
    log_f2m = np.log(alpha * m)  # f^2 M proportional to alpha M
    rhs = np.full_like(m, np.nan)
    rhs[1:-1] = (log_f2m[2:] - log_f2m[:-2]) / (lam[2:] - lam[:-2])
    ok = valid & np.isfinite(rhs)
    return float(np.max(np.abs(lhs[ok] - rhs[ok])))


def phase_harmony_phase(
    z,
    zdot,
    s_at_z: float,
    b_at_z: float,
    x,
    potential=None,
) -> float:
    """Local quadratic phase phi(x) = S(z) - e A(z).xi + B xi^2 / 2.

    xi = x - z is projected onto the hyperplane Sigma orthogonal to zdot; the
    evaluation radius must stay inside the near-field band r < 0.1/omega0 of
    the wave the worldline belongs to (checked by the caller against its
    omega0; here the radius is returned alongside for that check)."""
    z = np.asarray(z, dtype=float)
    x = np.asarray(x, dtype=float)
    xi = project_onto_hyperplane(x - z, zdot)
    xi2 = float(minkowski_dot(xi, xi))
    ea_term = 0.0
    if potential is not None and potential.e != 0.0:
        ea = potential.e_four(z[0], z[1:])
        ea_term = float(minkowski_dot(ea, xi))
    return float(s_at_z) - ea_term + 0.5 * float(b_at_z) * xi2


def near_field_radius(omega0: float) -> float:
    return NEAR_FIELD_RADIUS_FACTOR / omega0


def tachyonic_profile(params: SolitonParams, alpha: float, xpp, y, z):
    """X-type profile G_alpha = (sqrt(alpha) g0/4pi)/sqrt(alpha^2 q + l0^2)
    with q = y^2 + z^2 - x''^2 and the regulator Delta = 0.

    Points within half an (l0/alpha)^2 band of the singular hyperboloid
    q = -(l0/alpha)^2 are flagged invalid.  Returns (G, valid)."""
    xpp = np.asarray(xpp, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    q = np.asarray(y**2 + z**2 - xpp**2, dtype=float)
    l_eff_sq = (params.l0 / alpha) ** 2
    denom_sq = alpha**2 * q + params.l0**2  # = alpha^2 (q + l_eff^2)
    valid = (np.abs(q + l_eff_sq) >= TACHYON_BAND_FACTOR * l_eff_sq) & (denom_sq > 0)
    g = np.where(
        valid,
        np.sqrt(alpha) * params.coupling_scale / np.sqrt(np.where(valid, denom_sq, 1.0)),
        np.nan,
    )
    return g, valid
