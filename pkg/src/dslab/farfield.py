"""Time-symmetric far field of moving soliton singularities.

A worldline source carries (z, zdot, S, g) along its affine parameter; the
field at a query point x is assembled from the two light-cone intersections

    u_part(x) = g(l*) exp(i S(l*)) / (4 pi rho(l*)),   rho = |(x - z).zdot|

with the symmetric part the half-sum of retarded and advanced contributions.
Root finding brackets on a scan grid and bisects on the (Hermite or analytic)
worldline, vectorized over query batches.  Queries with rho below the matched
-asymptotics floor (10 l0) are refused in favor of the near-field module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DslabError, FarFieldProximityError, NoRootError
from .guidance import Trajectory, SUBLUMINAL
from .minkowski import minkowski_dot, project_onto_hyperplane

RHO_FLOOR_FACTOR = 10.0  # far-field formulas refused below 10*l0

PARTS = ("retarded", "advanced", "symmetric")


@dataclass
class WorldlineSource:
    """Sampled or analytic worldline with phase and coupling histories.

    For sampled sources the arrays are (n,) / (n,4); interpolation is cubic
    Hermite for z (slopes are the stored zdot), linear for zdot, S, g.
    """

    lam: np.ndarray
    z_samples: np.ndarray
    zdot_samples: np.ndarray
    s_samples: np.ndarray
    g_samples: np.ndarray
    omega0: float
    l0: float = 1e-4
    e_a_at: object = None  # callable lam -> eA(z(lam)) four-vector, or None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lam = np.asarray(self.lam, dtype=float)
        if np.any(np.diff(self.lam) <= 0):
            raise DslabError("worldline parameter must be strictly increasing")
        self._traj = Trajectory(
            lam=self.lam,
            z=np.asarray(self.z_samples, dtype=float),
            zdot=np.asarray(self.zdot_samples, dtype=float),
            m2=np.zeros_like(self.lam),
            regime=np.zeros(len(self.lam), dtype=np.int8),
        )

    @property
    def rho_floor(self) -> float:
        return RHO_FLOOR_FACTOR * self.l0

    def z(self, lam):
        return self._traj.interp_z(lam)

    def zdot(self, lam):
        return self._traj.interp_zdot(lam)

    def s_phase(self, lam):
        return np.interp(np.asarray(lam, dtype=float), self.lam, self.s_samples)

    def coupling(self, lam):
        return np.interp(np.asarray(lam, dtype=float), self.lam, self.g_samples)

    def time_reflected(self) -> "WorldlineSource":
        """Worldline with t -> -t (retarded/advanced roots must swap)."""
        flip = np.array([-1.0, 1.0, 1.0, 1.0])
        z = (self.z_samples * flip)[::-1].copy()
        zdot = (self.zdot_samples * flip)[::-1] * -1.0
        return WorldlineSource(
            lam=(-self.lam[::-1]).copy(),
            z_samples=z,
            zdot_samples=zdot.copy(),
            s_samples=self.s_samples[::-1].copy(),
            g_samples=self.g_samples[::-1].copy(),
            omega0=self.omega0,
            l0=self.l0,
        )


def analytic_source(
    z_fn,
    zdot_fn,
    s_fn,
    g_fn,
    lam_range: tuple[float, float],
    omega0: float,
    l0: float = 1e-4,
    n_samples: int = 2048,
    **meta,
) -> WorldlineSource:
    """Sample closed-form worldline callables onto a source."""
    lam = np.linspace(lam_range[0], lam_range[1], n_samples)
    z = np.stack([z_fn(l) for l in lam])
    zdot = np.stack([zdot_fn(l) for l in lam])
    s = np.array([s_fn(l) for l in lam])
    g = np.array([g_fn(l) for l in lam])
    return WorldlineSource(lam, z, zdot, s, g, omega0=omega0, l0=l0, meta=dict(meta))


def static_source(omega0: float, g0: float, position=(0.0, 0.0, 0.0),
                  lam_range=(-50.0, 50.0), l0: float = 1e-4, n_samples: int = 64) -> WorldlineSource:
    pos = np.asarray(position, dtype=float)
    return analytic_source(
        lambda l: np.array([l, *pos]),
        lambda l: np.array([1.0, 0.0, 0.0, 0.0]),
        lambda l: -omega0 * l,
        lambda l: g0,
        lam_range,
        omega0=omega0,
        l0=l0,
        n_samples=n_samples,
        kind="static",
    )


def uniform_source(omega0: float, g0: float, v: float,
                   lam_range=(-50.0, 50.0), l0: float = 1e-4, n_samples: int = 128) -> WorldlineSource:
    gamma = 1.0 / np.sqrt(1.0 - v * v)
    return analytic_source(
        lambda l: np.array([gamma * l, gamma * v * l, 0.0, 0.0]),
        lambda l: np.array([gamma, gamma * v, 0.0, 0.0]),
        lambda l: -omega0 * l,
        lambda l: g0,
        lam_range,
        omega0=omega0,
        l0=l0,
        n_samples=n_samples,
        kind="uniform",
        v=v,
    )


def accelerating_source(
    omega0: float,
    g0: float,
    accel: float,
    s_ddot: float = 0.0,
    g_rate: float = 0.0,
    lam_range=(-4.0, 4.0),
    l0: float = 1e-4,
    n_samples: int = 4096,
) -> WorldlineSource:
    """Hyperbolic worldline (|z..| = accel) with synthetic phase curvature
    S(l) = -omega0 l + s_ddot l^2/2 and coupling g = g0 exp(g_rate l).

    The Eq.-(36)-style oracle for the quadratic phase term is
    (S.. + 2 S. g./g)/2 evaluated at the sample of interest."""
    a = accel
    src = analytic_source(
        lambda l: np.array([np.sinh(a * l) / a, (np.cosh(a * l) - 1.0) / a, 0.0, 0.0]),
        lambda l: np.array([np.cosh(a * l), np.sinh(a * l), 0.0, 0.0]),
        lambda l: -omega0 * l + 0.5 * s_ddot * l**2,
        lambda l: g0 * np.exp(g_rate * l),
        lam_range,
        omega0=omega0,
        l0=l0,
        n_samples=n_samples,
        kind="accelerating",
        accel=accel,
        s_ddot=s_ddot,
        g_rate=g_rate,
    )
    return src


def source_from_trajectory(
    traj: Trajectory,
    omega0: float,
    g0: float,
    l0: float,
    potential=None,
    s_init: float = 0.0,
) -> WorldlineSource:
    """Build a far-field source from an integrated trajectory.

    The worldline phase accumulates dS/dlam = -sign(zdot.zdot) sqrt(zdot.zdot
    M^2) - e A.zdot by trapezoid quadrature at the stored stride; the coupling
    follows g = g0 / sqrt(alpha) with alpha = sqrt(|M|/omega0)."""
    zz = minkowski_dot(traj.zdot, traj.zdot)
    prod = zz * traj.m2
    dsdlam = -np.sign(zz) * np.sqrt(np.abs(prod))
    if potential is not None and potential.e != 0.0:
        ea = np.stack([potential.e_four(z[0], z[1:]) for z in traj.z])
        dsdlam = dsdlam - minkowski_dot(ea, traj.zdot)
    s_hist = s_init + np.concatenate(
        [[0.0], np.cumsum(0.5 * (dsdlam[1:] + dsdlam[:-1]) * np.diff(traj.lam))]
    )
    alpha = np.sqrt(np.sqrt(np.abs(traj.m2)) / omega0)
    g_hist = g0 / np.sqrt(np.maximum(alpha, 1e-300))
    return WorldlineSource(
        lam=traj.lam,
        z_samples=traj.z,
        zdot_samples=traj.zdot,
        s_samples=s_hist,
        g_samples=g_hist,
        omega0=omega0,
        l0=l0,
        meta={"from_trajectory": True},
    )


# ---------------------------------------------------------------------------
# Light-cone roots


def _side_fn(src: WorldlineSource, xs: np.ndarray, lam, sign: float) -> np.ndarray:
    """Monotone root function: sign*(x^0 - z^0(lam)) - |x_vec - z_vec(lam)|.

    For subluminal worldlines (z^0 strictly increasing, |dz_vec| < dz^0) this
    is strictly monotone in lam, so any sample grid brackets the unique root;
    its zero coincides with the light-cone condition (x - z)^2 = 0 on the
    correct time side."""
    z = src.z(np.asarray(lam, dtype=float))
    dt = xs[..., 0] - z[..., 0]
    dr = np.sqrt(np.sum((xs[..., 1:] - z[..., 1:]) ** 2, axis=-1))
    return sign * dt - dr


def lightcone_roots_batch(src: WorldlineSource, xs: np.ndarray, iters: int = 80):
    """Retarded/advanced parameter roots for each query point.

    Returns (lam_ret, lam_adv, ok_ret, ok_adv).  Brackets on the stored
    sample endpoints (monotone split form, see _side_fn) and bisects on the
    Hermite-interpolated worldline; a query on the worldline itself has both
    roots at its own parameter (degenerate light cone)."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    nq = len(xs)
    lam_lo = src.lam[0]
    lam_hi = src.lam[-1]
    lam_ret = np.full(nq, np.nan)
    lam_adv = np.full(nq, np.nan)
    ok_ret = np.zeros(nq, dtype=bool)
    ok_adv = np.zeros(nq, dtype=bool)
    for side, sign in (("ret", 1.0), ("adv", -1.0)):
        g_lo = _side_fn(src, xs, np.full(nq, lam_lo), sign)
        g_hi = _side_fn(src, xs, np.full(nq, lam_hi), sign)
        ok = (g_lo == 0.0) | (g_hi == 0.0) | (g_lo * g_hi < 0.0)
        lo = np.full(nq, lam_lo)
        hi = np.full(nq, lam_hi)
        flo = g_lo
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            fm = _side_fn(src, xs, mid, sign)
            took_low = flo * fm <= 0.0
            hi = np.where(took_low, mid, hi)
            lo = np.where(took_low, lo, mid)
            flo = np.where(took_low, flo, fm)
        root = 0.5 * (lo + hi)
        if side == "ret":
            lam_ret = np.where(ok, root, np.nan)
            ok_ret = ok
        else:
            lam_adv = np.where(ok, root, np.nan)
            ok_adv = ok
    return lam_ret, lam_adv, ok_ret, ok_adv


def lightcone_roots(src: WorldlineSource, x) -> tuple[float, float]:
    x = np.asarray(x, dtype=float)
    lam_ret, lam_adv, ok_ret, ok_adv = lightcone_roots_batch(src, x[None, :])
    if not ok_ret[0]:
        raise NoRootError(
            f"retarded light-cone root not bracketed by the sampled span "
            f"[{src.lam[0]!r}, {src.lam[-1]!r}] for x={x.tolist()}"
        )
    if not ok_adv[0]:
        raise NoRootError(
            f"advanced light-cone root not bracketed by the sampled span "
            f"[{src.lam[0]!r}, {src.lam[-1]!r}] for x={x.tolist()}"
        )
    return float(lam_ret[0]), float(lam_adv[0])


# ---------------------------------------------------------------------------
# Field evaluation


def _part_value(src: WorldlineSource, xs: np.ndarray, lam_root: np.ndarray):
    z = src.z(lam_root)
    zdot = src.zdot(lam_root)
    d = xs - z
    rho = np.abs(minkowski_dot(d, zdot))
    val = src.coupling(lam_root) * np.exp(1j * src.s_phase(lam_root)) / (4.0 * np.pi * rho)
    if src.e_a_at is not None:
        # leading near-singularity phase factor exp(-i eA(z).(x - z))
        ea = np.stack([src.e_a_at(l) for l in np.atleast_1d(lam_root)])
        val = val * np.exp(-1j * minkowski_dot(ea, d))
    return val, rho


def u_field_batch(src: WorldlineSource, xs: np.ndarray, parts=PARTS):
    """Field parts at query points; invalid points (missing root or rho under
    the floor) are nan+mask.  Returns dict part -> values, plus masks."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    lam_ret, lam_adv, ok_ret, ok_adv = lightcone_roots_batch(src, xs)
    out = {}
    u_ret = np.full(len(xs), np.nan + 0j)
    u_adv = np.full(len(xs), np.nan + 0j)
    rho_ret = np.full(len(xs), np.nan)
    rho_adv = np.full(len(xs), np.nan)
    if np.any(ok_ret):
        u_ret[ok_ret], rho_ret[ok_ret] = _part_value(src, xs[ok_ret], lam_ret[ok_ret])
    if np.any(ok_adv):
        u_adv[ok_adv], rho_adv[ok_adv] = _part_value(src, xs[ok_adv], lam_adv[ok_adv])
    near_ret = rho_ret <= src.rho_floor
    near_adv = rho_adv <= src.rho_floor
    valid_ret = ok_ret & ~near_ret
    valid_adv = ok_adv & ~near_adv
    if "retarded" in parts:
        out["retarded"] = np.where(valid_ret, u_ret, np.nan + 0j)
    if "advanced" in parts:
        out["advanced"] = np.where(valid_adv, u_adv, np.nan + 0j)
    if "symmetric" in parts:
        both = valid_ret & valid_adv
        out["symmetric"] = np.where(both, 0.5 * (u_ret + u_adv), np.nan + 0j)
    masks = {"retarded": valid_ret, "advanced": valid_adv, "symmetric": valid_ret & valid_adv}
    return out, masks, (lam_ret, lam_adv)


def u_field_point(src: WorldlineSource, x, parts=PARTS) -> dict:
    """Scalar evaluation; raises on missing roots or near-worldline queries."""
    x = np.asarray(x, dtype=float)
    lam_ret, lam_adv = lightcone_roots(src, x)
    vals = {}
    for part, lam_root in (("retarded", lam_ret), ("advanced", lam_adv)):
        val, rho = _part_value(src, x[None, :], np.array([lam_root]))
        if rho[0] <= src.rho_floor:
            raise FarFieldProximityError(
                f"query within rho_floor={src.rho_floor!r} of the worldline "
                f"(rho={float(rho[0])!r}); use the soliton near-field module"
            )
        if part in parts or "symmetric" in parts:
            vals[part] = complex(val[0])
    out = {p: vals[p] for p in parts if p in vals}
    if "symmetric" in parts:
        out["symmetric"] = 0.5 * (vals["retarded"] + vals["advanced"])
    return out


def n_soliton_field(sources, x, parts=("symmetric",)) -> dict:
    """Linear superposition of per-source fields (each with its own coupling
    and phase history); per-source failures carry the source index."""
    out = {p: 0.0 + 0.0j for p in parts}
    for j, src in enumerate(sources):
        try:
            vals = u_field_point(src, x, parts=parts)
        except DslabError as exc:
            raise type(exc)(f"source {j}: {exc}") from exc
        for p in parts:
            out[p] += vals[p]
    return out


def monopole_reference(omega0: float, g0: float, t: float, big_r, part: str = "symmetric"):
    """Rest-frame oscillating monopole and its retarded/advanced components."""
    big_r = np.asarray(big_r, dtype=float)
    if np.any(big_r <= 0):
        raise DslabError("monopole reference needs R > 0")
    clock = np.exp(-1j * omega0 * np.asarray(t))
    pref = g0 / (4.0 * np.pi * big_r)
    if part == "symmetric":
        return pref * clock * np.cos(omega0 * big_r)
    if part == "retarded":
        return pref * clock * np.exp(1j * omega0 * big_r)
    if part == "advanced":
        return pref * clock * np.exp(-1j * omega0 * big_r)
    raise DslabError(f"unknown part {part!r}")


def boosted_monopole_reference(omega0: float, g0: float, x, v: float):
    """Eq.-(7)-style boosted monopole at lab four-point x (source moving at v)."""
    x = np.asarray(x, dtype=float)
    gamma = 1.0 / np.sqrt(1.0 - v * v)
    t, xx, yy, zz = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    big_r = np.sqrt(yy**2 + zz**2 + gamma**2 * (xx - v * t) ** 2)
    return (
        g0
        / (4.0 * np.pi)
        * np.exp(-1j * omega0 * gamma * (t - v * xx))
        * np.cos(omega0 * big_r)
        / big_r
    )


def u_in_field(src: WorldlineSource, x):
    """Boundary-condition identity u_in = (u_adv - u_ret)/2 = -u_out."""
    vals = u_field_point(src, x, parts=("retarded", "advanced"))
    return 0.5 * (vals["advanced"] - vals["retarded"])


# ---------------------------------------------------------------------------
# Near-singularity diagnostics


@dataclass
class NearSingularityReport:
    part: str
    r: np.ndarray
    phase: np.ndarray
    phase_slope: float  # linear coefficient c1 of phi(r)
    phase_curvature: float  # quadratic coefficient c2
    exponent: float  # log-log slope of |phi(r) - c0| (nan if phase flat)
    phase_flat: bool
    amp_r_coeff: float  # leading coefficient of r*|u|
    expected_slope: float | None = None
    expected_curvature: float | None = None


def near_singularity_diagnostics(
    src: WorldlineSource,
    lam0: float,
    r_list,
    direction=None,
    parts=PARTS,
    expected: dict | None = None,
) -> dict:
    """Probe phi(x) = arg u(z + r eta) on the hyperplane Sigma(lam0).

    Fits phi = c0 + c1 r + c2 r^2: the symmetric field must have c1 ~ 0 and
    |xi.(dphi + eA)| = r|c1 + 2 c2 r + ...| scaling as O(r^2); retarded-only
    and advanced-only fields show c1 = -S.(lam0) and +S.(lam0) respectively
    (the phase-slope discontinuity).  The amplitude column fits r|u|.
    """
    r = np.asarray(r_list, dtype=float)
    if len(r) < 6 or r.max() / r.min() < 2.0:
        raise DslabError("insufficient r range for near-singularity fits (need >=6 points spanning 2x)")
    z0 = src.z(lam0)[0]
    zd0 = src.zdot(lam0)[0]
    if direction is None:
        direction = np.array([0.0, 1.0, 0.0, 0.0])
    eta = project_onto_hyperplane(np.asarray(direction, dtype=float), zd0)
    nrm = np.sqrt(-minkowski_dot(eta, eta))
    if not nrm > 0:
        raise DslabError("probe direction collapsed onto the worldline tangent")
    eta = eta / nrm
    xs = z0[None, :] + r[:, None] * eta[None, :]
    fields, masks, _ = u_field_batch(src, xs, parts=parts)
    reports = {}
    design = np.stack([np.ones_like(r), r, r**2], axis=1)
    for part in parts:
        u = fields[part]
        if not np.all(masks[part]):
            raise DslabError(f"{part}: some probe radii unresolved (roots/rho floor)")
        phi = np.unwrap(np.angle(u))
        coeff, *_ = np.linalg.lstsq(design, phi, rcond=None)
        c0, c1, c2 = coeff
        resid = phi - c0
        flat = bool(np.max(np.abs(resid)) < 1e-9 * max(1.0, abs(c0)))
        if flat:
            expn = float("nan")
        else:
            expn = float(np.polyfit(np.log(r), np.log(np.abs(resid) + 1e-300), 1)[0])
        amp = r * np.abs(u)
        acoef, *_ = np.linalg.lstsq(np.stack([np.ones_like(r), r**2], axis=1), amp, rcond=None)
        rep = NearSingularityReport(
            part=part,
            r=r,
            phase=phi,
            phase_slope=float(c1),
            phase_curvature=float(c2),
            exponent=expn,
            phase_flat=flat,
            amp_r_coeff=float(acoef[0]),
        )
        if expected:
            rep.expected_slope = expected.get(part, {}).get("slope")
            rep.expected_curvature = expected.get(part, {}).get("curvature")
        reports[part] = rep
    return reports


# ---------------------------------------------------------------------------
# Field maps


def field_map(
    sources,
    t_vals: np.ndarray,
    x_vals: np.ndarray,
    parts=PARTS,
    y: float = 0.0,
    z: float = 0.0,
    chunk: int = 8192,
):
    """Evaluate field parts over a (t, x) window; returns dict part -> 2D
    array (len(t_vals), len(x_vals)) with nan outside validity."""
    tt, xx = np.meshgrid(np.asarray(t_vals, dtype=float), np.asarray(x_vals, dtype=float), indexing="ij")
    pts = np.stack([tt.ravel(), xx.ravel(), np.full(tt.size, y), np.full(tt.size, z)], axis=1)
    total = {p: np.zeros(len(pts), dtype=complex) for p in parts}
    valid = {p: np.ones(len(pts), dtype=bool) for p in parts}
    srcs = sources if isinstance(sources, (list, tuple)) else [sources]
    for src in srcs:
        for lo in range(0, len(pts), chunk):
            sl = slice(lo, lo + chunk)
            fields, masks, _ = u_field_batch(src, pts[sl], parts=parts)
            for p in parts:
                total[p][sl] += np.where(masks[p][: len(fields[p])], fields[p], 0.0)
                valid[p][sl] &= masks[p]
    out = {}
    for p in parts:
        arr = np.where(valid[p], total[p], np.nan + 0j)
        out[p] = arr.reshape(tt.shape)
    return out
