"""End-to-end experiment harnesses: beam splitter, EPR setting-dependence
audit, and Cauchy-surface recording of the time-symmetric field.

Each scenario is a plain function over a frozen config dataclass; outputs are
deterministic under (config, seed) and every artifact embeds the config hash.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from . import __version__ as TOOL_VERSION
from .provenance import dataclass_hash
from .errors import ConfigError, DslabError
from .evolution import WaveState, evolve, norm_l2
from .farfield import field_map, source_from_trajectory
from .fieldio import FieldContainer, write_field
from .grids import ComplexScalarField, GridSpec
from .guidance import (
    EnsembleSpec,
    EnsembleTransport2D,
    SUBLUMINAL,
    Trajectory,
    non_crossing_ok,
    sample_born_1d,
    sample_born_2d,
    transport_ensemble_1d,
    write_trajectory_csv,
)
from .interp import cubic_interp_1d
from .potentials import ExternalPotential, gaussian_barrier
from .stats import ks_distance_to_density, ks_two_sample


# ---------------------------------------------------------------------------
# Configs


@dataclass(frozen=True)
class BeamSplitterConfig:
    # p0/omega0 stays well under 1: scenario worldlines feed the far-field
    # module, whose sources must be subluminal
    omega0: float = 1.0
    sigma0: float = 10.0
    x_start: float = -50.0
    p0: float = 0.5
    domain: tuple = (-240.0, 240.0)
    nx: int = 4096
    dt: float = 0.05
    t_end: float = 200.0
    barrier_center: float = 0.0
    barrier_width: float = 1.0
    barrier_amplitude: float | None = None  # None: tune to 50/50
    n_ensemble: int = 10000
    seed: int = 20250101
    checkpoint_every: int = 10
    fan_size: int = 64
    map_l0: float = 2e-3
    g0: float = 1.0

    def grid(self) -> GridSpec:
        return GridSpec(extents=((self.domain[0], self.domain[1], self.nx),), dt=self.dt)


@dataclass(frozen=True)
class EprConfig:
    """EPR pair as the original correlated Gaussian: tight center-of-mass
    (width sigma_com), wide relative coordinate (sigma_rel) around separation
    2*source_offset, relative momentum 2*k0 flying the particles apart.  The
    connected configuration-space support is what makes the remote-setting
    dependence visible on almost every trajectory."""

    omega0: float = 1.0
    sigma_com: float = 1.0
    sigma_rel: float = 4.0
    k0: float = 1.5
    source_offset: float = 4.0
    domain: tuple = (-44.0, 44.0)
    nx: int = 384
    dt: float = 0.02
    t_end: float = 16.0
    apparatus_distance: float = 22.0
    barrier_width: float = 1.0
    amp_a: float = 2.0
    amp_b: float = 2.0
    t_on: float = 8.0
    t_ramp: float = 3.0
    entangled: bool = True
    n_ensemble: int = 10000
    seed: int = 777
    flip_b_amp: float = 0.0  # the alternate b-setting for the A/B audit

    def grid(self) -> GridSpec:
        lo, hi = self.domain
        return GridSpec(extents=((lo, hi, self.nx), (lo, hi, self.nx)), dt=self.dt)


@dataclass(frozen=True)
class CauchyConfig:
    """Geometry notes: the packet must be narrow enough that it has not yet
    overlapped the barrier when the setting gates on (clean pre-interaction
    segment), and t_end must extend far enough that every surface point's
    advanced root lands on the sampled worldline even for the reflected
    branch that runs away from +x."""

    omega0: float = 1.0
    sigma0: float = 4.0
    x_start: float = -60.0
    p0: float = 0.5
    domain: tuple = (-280.0, 280.0)
    nx: int = 4096
    dt: float = 0.05
    t_end: float = 260.0
    barrier_center: float = 0.0
    barrier_width: float = 1.0
    amp_on: float = 1.0
    amp_off: float = 0.0
    t_on: float = 70.0
    surface_time: float = 20.0
    surface_halfwidth: float = 95.0
    surface_n: int = 381
    z_start: float = -60.0
    map_l0: float = 2e-3
    g0: float = 1.0
    seed: int = 4242

    def grid(self) -> GridSpec:
        return GridSpec(extents=((self.domain[0], self.domain[1], self.nx),), dt=self.dt)


@dataclass
class ScenarioReport:
    scenario: str
    config_hash: str
    seed: int
    values: dict = field(default_factory=dict)

    def write(self, path):
        lines = [
            f"scenario = {self.scenario}",
            f"config_hash = {self.config_hash}",
            f"tool_version = {TOOL_VERSION}",
            f"seed = {self.seed}",
        ]
        for k in sorted(self.values):
            lines.append(f"{k} = {self.values[k]!r}")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Shared pieces


def gaussian_packet_field(grid: GridSpec, sigma0: float, x0: float, p0: float) -> ComplexScalarField:
    x = grid.axis(0)
    psi = (2.0 * np.pi * sigma0**2) ** -0.25 * np.exp(
        -((x - x0) ** 2) / (4.0 * sigma0**2) + 1j * p0 * x
    )
    return ComplexScalarField(grid, psi, time_label=0.0)


def _evolve_wave(cfg: BeamSplitterConfig, amplitude: float, record: bool):
    grid = cfg.grid()
    pot = gaussian_barrier(amplitude, center=cfg.barrier_center, width=cfg.barrier_width)
    state = WaveState(
        psi=gaussian_packet_field(grid, cfg.sigma0, cfg.x_start, cfg.p0),
        omega0=cfg.omega0,
        potential=pot,
        regime="schrodinger",
    )
    n_steps = int(round(cfg.t_end / cfg.dt))
    final, hist = evolve(state, n_steps, record_every=1 if record else None)
    if hist is not None:
        hist.finalize()
    return final, hist


def transmission_probability(cfg: BeamSplitterConfig, amplitude: float) -> float:
    final, _ = _evolve_wave(cfg, amplitude, record=False)
    x = cfg.grid().axis(0)
    dens = np.abs(final.psi.values) ** 2
    dx = cfg.grid().spacing(0)
    total = float(np.sum(dens) * dx)
    return float(np.sum(dens[x > cfg.barrier_center]) * dx / total)


def tune_barrier(cfg: BeamSplitterConfig, target: float = 0.5, tol: float = 0.005) -> float:
    """Bisection on the barrier amplitude against wave-only transmission.

    Scans upward from zero to bracket the target first; raises with the scan
    table if transmission is not monotone enough to bracket."""
    e_kin = cfg.p0**2 / (2.0 * cfg.omega0)
    amps = [0.0]
    trans = [transmission_probability(cfg, 0.0)]
    amp = 0.5 * e_kin
    scan = [(amps[0], trans[0])]
    while trans[-1] > target and amp < 100 * e_kin:
        amps.append(amp)
        trans.append(transmission_probability(cfg, amp))
        scan.append((amp, trans[-1]))
        amp *= 2.0
    if trans[-1] > target:
        raise DslabError(f"no bracket for target transmission {target}; scan table: {scan}")
    lo, hi = amps[-2], amps[-1]
    t_lo, t_hi = trans[-2], trans[-1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        t_mid = transmission_probability(cfg, mid)
        if abs(t_mid - target) <= tol * 0.5:
            return mid
        if t_mid > target:
            lo, t_lo = mid, t_mid
        else:
            hi, t_hi = mid, t_mid
        if hi - lo < 1e-10 * e_kin:
            break
    return 0.5 * (lo + hi)


def trajectory_from_path(history, ts: np.ndarray, xs: np.ndarray, omega0: float) -> Trajectory:
    """Wrap a recorded nonrelativistic path (t, x(t)) as a Trajectory.

    lambda accumulates proper time; the squared mass along the path is
    omega0^2 + Q with the static-amplitude quantum potential from the wave
    history, giving the worldline source everything it needs."""
    lo, hi, _ = history.grid.extents[0]
    dx = history.grid.spacing(0)
    vs = np.empty_like(xs)
    m2 = np.empty_like(xs)
    for i, (t, x) in enumerate(zip(ts, xs)):
        k = int(np.clip(np.searchsorted(history.t, t) - 1, 0, len(history.t) - 2))
        u = (t - history.t[k]) / (history.t[k + 1] - history.t[k])
        va = cubic_interp_1d(history.vel[0][k], lo, dx, np.array([x]))[0]
        vb = cubic_interp_1d(history.vel[0][k + 1], lo, dx, np.array([x]))[0]
        vs[i] = (1 - u) * va + u * vb
        qa = cubic_interp_1d(history.qpot[k], lo, dx, np.array([x]))[0]
        qb = cubic_interp_1d(history.qpot[k + 1], lo, dx, np.array([x]))[0]
        m2[i] = omega0**2 + (1 - u) * qa + u * qb
    v2 = np.clip(vs**2, 0.0, 0.999999)
    gamma = 1.0 / np.sqrt(1.0 - v2)
    dtau = np.sqrt(1.0 - v2)
    lam = np.concatenate([[0.0], np.cumsum(0.5 * (dtau[1:] + dtau[:-1]) * np.diff(ts))])
    z = np.stack([ts, xs, np.zeros_like(ts), np.zeros_like(ts)], axis=1)
    zdot = np.stack([gamma, gamma * vs, np.zeros_like(vs), np.zeros_like(vs)], axis=1)
    m2 = np.maximum(m2, 1e-6 * omega0**2)  # far-field sources stay subluminal
    return Trajectory(
        lam=lam,
        z=z,
        zdot=zdot,
        m2=m2,
        regime=np.full(len(ts), SUBLUMINAL, dtype=np.int8),
        meta={"nonrelativistic_path": True},
    )


# ---------------------------------------------------------------------------
# Beam splitter


def run_beam_splitter(cfg: BeamSplitterConfig, outputs: dict | None = None,
                      config_hash: str | None = None) -> ScenarioReport:
    """Fig.-2a-style run: evolve the packet through the (tuned) barrier,
    transport a Born ensemble, classify reflected/transmitted, and emit the
    u_sym map along one selected reflected trajectory.

    outputs, when given, maps artifact names ('report', 'fan_csv', 'psi_map',
    'usym_map', 'trajectory_csv', 'ensemble_csv') to paths."""
    chash = config_hash or dataclass_hash(cfg)
    amplitude = cfg.barrier_amplitude
    if amplitude is None:
        amplitude = tune_barrier(cfg)
    final, hist = _evolve_wave(cfg, amplitude, record=True)
    grid = cfg.grid()
    x_axis = grid.axis(0)

    spec = EnsembleSpec(n=cfg.n_ensemble, seed=cfg.seed)
    x0 = np.sort(sample_born_1d(x_axis, hist.a2[0], spec))
    xf, checkpoints = transport_ensemble_1d(hist, x0, record_every=cfg.checkpoint_every)

    barrier_zone = 5.0 * cfg.barrier_width
    reflected = xf < cfg.barrier_center - barrier_zone
    transmitted = xf > cfg.barrier_center + barrier_zone
    unclassified = ~(reflected | transmitted)
    order = np.argsort(x0, kind="stable")
    crossing_free = all(non_crossing_ok(order, pos, tol=1e-9) for _, pos in checkpoints)
    # single-threshold monotonicity of the classification in x0
    classes = np.where(reflected, 0, np.where(transmitted, 1, 2))
    cls_sorted = classes[order]
    decided = cls_sorted != 2
    monotone = bool(np.all(np.diff(cls_sorted[decided]) >= 0))

    report = ScenarioReport(
        scenario="beam_splitter",
        config_hash=chash,
        seed=cfg.seed,
        values={
            "barrier_amplitude": float(amplitude),
            "n": int(cfg.n_ensemble),
            "reflected_fraction": float(np.mean(reflected)),
            "transmitted_fraction": float(np.mean(transmitted)),
            "unclassified_count": int(np.sum(unclassified)),
            "non_crossing": bool(crossing_free),
            "classification_monotone": monotone,
            "wave_transmission": float(np.sum(hist.a2[-1][x_axis > cfg.barrier_center]) * grid.spacing(0)),
            "rng": "philox4x32-10(numpy)",
        },
    )

    if outputs:
        _write_beam_outputs(cfg, hist, x0, xf, checkpoints, reflected, report, outputs, chash)
    report.values["final_positions"] = xf
    report.values["initial_positions"] = x0
    report.values["history"] = hist
    return report


def _write_beam_outputs(cfg, hist, x0, xf, checkpoints, reflected, report, outputs, chash):
    meta = {"config_hash": chash, "tool_version": TOOL_VERSION, "scenario": "beam_splitter"}
    if "report" in outputs:
        report.write(outputs["report"])
    if "psi_map" in outputs:
        stride = max(1, len(hist.t) // 400)
        sub = hist.a2[::stride]
        write_field(
            outputs["psi_map"],
            FieldContainer(
                axes=(
                    (float(hist.t[0]), float(hist.t[::stride][-1]), sub.shape[0]),
                    tuple(map(float, cfg.domain)) + (cfg.nx,),
                ),
                values=sub,
                dt=cfg.dt * stride,
                meta={**meta, "axes": ["t", "x"], "field": "abs_psi_sq"},
            ),
        )
    if "fan_csv" in outputs:
        idx = np.linspace(0, len(x0) - 1, cfg.fan_size).astype(int)
        lines = [f"# config_hash={chash} tool_version={TOOL_VERSION} columns=t,then positions"]
        lines.append("class," + ",".join("reflected" if reflected[i] else "transmitted" for i in idx))
        lines.append("t0," + ",".join(repr(float(x0[i])) for i in idx))
        for t, pos in checkpoints:
            lines.append(repr(float(t)) + "," + ",".join(repr(float(pos[i])) for i in idx))
        with open(outputs["fan_csv"], "w") as fh:
            fh.write("\n".join(lines) + "\n")
    if "usym_map" in outputs or "trajectory_csv" in outputs:
        refl_idx = np.where(reflected)[0]
        pick = refl_idx[len(refl_idx) // 2] if len(refl_idx) else 0
        ts = np.concatenate([[hist.t[0]], [t for t, _ in checkpoints]])
        xs = np.concatenate([[x0[pick]], [pos[pick] for _, pos in checkpoints]])
        traj = trajectory_from_path(hist, ts, xs, cfg.omega0)
        if "trajectory_csv" in outputs:
            write_trajectory_csv(
                outputs["trajectory_csv"], traj, run_id="beam_splitter", seed=cfg.seed,
                config_hash=chash, tool_version=TOOL_VERSION,
            )
        if "usym_map" in outputs:
            src = source_from_trajectory(traj, cfg.omega0, cfg.g0, cfg.map_l0)
            t_vals = np.linspace(hist.t[0] + 1.0, hist.t[-1] - 1.0, 160)
            x_vals = np.linspace(cfg.domain[0] / 2, cfg.domain[1] / 2, 240)
            maps = field_map(src, t_vals, x_vals, parts=("symmetric", "retarded", "advanced"))
            write_field(
                outputs["usym_map"],
                FieldContainer(
                    axes=(
                        (float(t_vals[0]), float(t_vals[-1]), len(t_vals)),
                        (float(x_vals[0]), float(x_vals[-1]), len(x_vals)),
                    ),
                    values=maps["symmetric"],
                    dt=float(t_vals[1] - t_vals[0]),
                    meta={**meta, "axes": ["t", "x"], "field": "u_sym"},
                ),
            )
    if "ensemble_csv" in outputs:
        lines = [f"# config_hash={chash} tool_version={TOOL_VERSION}", "x0,x_final,class"]
        for a, b, r in zip(x0, xf, reflected):
            lines.append(f"{float(a)!r},{float(b)!r},{'reflected' if r else 'other'}")
        with open(outputs["ensemble_csv"], "w") as fh:
            fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# EPR


def _epr_initial(cfg: EprConfig, grid: GridSpec) -> np.ndarray:
    x = grid.axis(0)
    a0, k0 = cfg.source_offset, cfg.k0
    x1 = x[:, None]
    x2 = x[None, :]
    if cfg.entangled:
        com = x1 + x2
        rel = x2 - x1 - 2.0 * a0
        psi = np.exp(
            -(com**2) / (8.0 * cfg.sigma_com**2)
            - rel**2 / (8.0 * cfg.sigma_rel**2)
            + 1j * k0 * (x2 - x1)
        )
    else:
        # factorized control with matching single-particle marginals
        sp = np.sqrt(0.5 * (cfg.sigma_com**2 + cfg.sigma_rel**2))
        g1 = np.exp(-((x + a0) ** 2) / (4 * sp**2) - 1j * k0 * x)
        g2 = np.exp(-((x - a0) ** 2) / (4 * sp**2) + 1j * k0 * x)
        psi = g1[:, None] * g2[None, :]
    dx = grid.spacing(0)
    psi = psi / np.sqrt(np.sum(np.abs(psi) ** 2) * dx * dx)
    return psi


def _epr_potential(cfg: EprConfig, amp_a: float, amp_b: float) -> ExternalPotential:
    """Single-particle landscape (Alice's device at -L, Bob's at +L, gated on
    at t_on) applied to each particle's coordinate: the configuration-space
    potential is V(x1) + V(x2), so the Hamiltonian stays separable and the
    quantum marginals are exactly setting-independent (no-signalling)."""
    base_a = gaussian_barrier(amp_a, center=-cfg.apparatus_distance, width=cfg.barrier_width,
                              t_on=cfg.t_on, t_ramp=cfg.t_ramp)
    base_b = gaussian_barrier(amp_b, center=+cfg.apparatus_distance, width=cfg.barrier_width,
                              t_on=cfg.t_on, t_ramp=cfg.t_ramp)

    def v_single(t, coord):
        xyz = np.zeros(np.shape(coord) + (3,))
        xyz[..., 0] = coord
        return base_a.v(t, xyz) + base_b.v(t, xyz)

    def v(t, xyz):
        return v_single(t, xyz[..., 0]) + v_single(t, xyz[..., 1])

    return ExternalPotential(v=v, e=1.0, label=f"epr(a={amp_a!r},b={amp_b!r},t_on={cfg.t_on!r})")


def _epr_run_product(cfg: EprConfig, amp_b: float, x1_0: np.ndarray, x2_0: np.ndarray):
    """Factorized control: a product state under the separable Hamiltonian
    stays a product, so each factor evolves in its own 1D field and particle
    1 literally never sees Bob's amplitude."""
    sp = float(np.sqrt(0.5 * (cfg.sigma_com**2 + cfg.sigma_rel**2)))
    grid1 = GridSpec(extents=(tuple(map(float, cfg.domain)) + (cfg.nx,),), dt=cfg.dt)
    n_steps = int(round(cfg.t_end / cfg.dt))
    finals = []
    for x0, center, k in (
        (x1_0, -cfg.source_offset, -cfg.k0),
        (x2_0, +cfg.source_offset, +cfg.k0),
    ):
        pot_a = gaussian_barrier(cfg.amp_a, center=-cfg.apparatus_distance,
                                 width=cfg.barrier_width, t_on=cfg.t_on, t_ramp=cfg.t_ramp)
        pot_b = gaussian_barrier(amp_b, center=+cfg.apparatus_distance,
                                 width=cfg.barrier_width, t_on=cfg.t_on, t_ramp=cfg.t_ramp)

        def v(t, xyz, pa=pot_a, pb=pot_b):
            return pa.v(t, xyz) + pb.v(t, xyz)

        pot = ExternalPotential(v=v, e=1.0, label="epr_product_axis")
        state = WaveState(
            psi=gaussian_packet_field(grid1, sp, center, k),
            omega0=cfg.omega0, potential=pot, regime="schrodinger",
        )
        _, hist = evolve(state, n_steps, record_every=1)
        hist.finalize()
        xf, _ = transport_ensemble_1d(hist, x0)
        finals.append(xf)
    return finals[0], finals[1], None


def _epr_run_single(cfg: EprConfig, amp_b: float, x1_0: np.ndarray, x2_0: np.ndarray):
    """Evolve the 2-particle wave with Bob's amplitude amp_b, streaming the
    ensemble along; returns final (x1, x2)."""
    if not cfg.entangled:
        return _epr_run_product(cfg, amp_b, x1_0, x2_0)
    grid = cfg.grid()
    dx = grid.spacing(0)
    pot = _epr_potential(cfg, cfg.amp_a, amp_b)
    psi = _epr_initial(cfg, grid)
    n_steps = int(round(cfg.t_end / cfg.dt))
    from .evolution import SchrodingerEvolver
    from .grids import first_derivative

    state = WaveState(
        psi=ComplexScalarField(grid, psi, 0.0), omega0=cfg.omega0, potential=pot,
        regime="schrodinger",
    )
    ev = SchrodingerEvolver(state)
    transport = EnsembleTransport2D(grid, x1_0, x2_0)
    floor = 1e-300

    def velocity_grids(values):
        a2 = np.abs(values) ** 2 + floor
        v1 = np.imag(np.conj(values) * first_derivative(values, dx, axis=0)) / a2 / cfg.omega0
        v2 = np.imag(np.conj(values) * first_derivative(values, dx, axis=1)) / a2 / cfg.omega0
        return v1, v2

    vals = psi
    v1_a, v2_a = velocity_grids(vals)
    t = 0.0
    for k in range(n_steps):
        vals = ev.step(vals, t)
        t = (k + 1) * cfg.dt
        v1_b, v2_b = velocity_grids(vals)
        transport.advance(v1_a, v2_a, v1_b, v2_b, cfg.dt)
        v1_a, v2_a = v1_b, v2_b
    return transport.x1.copy(), transport.x2.copy(), vals


def run_epr(cfg: EprConfig, outputs: dict | None = None,
            config_hash: str | None = None) -> ScenarioReport:
    """A/B audit: identical initial conditions and seed, Bob's setting flipped.

    Reports the per-trajectory divergence |dz1| (trajectory-level nonlocal
    dependence for entangled states) and the two-sample KS distance between
    the z1 marginals (statistical no-signalling)."""
    chash = config_hash or dataclass_hash(cfg)
    # packets must separate before the settings engage
    sigma_marginal = float(np.sqrt(0.5 * (cfg.sigma_com**2 + cfg.sigma_rel**2)))
    if cfg.t_on * cfg.k0 / cfg.omega0 < 2.0 * sigma_marginal:
        raise ConfigError(
            "packets not separated before settings engage: need t_on * k0/omega0 "
            f">= 2 sigma_marginal, got {cfg.t_on * cfg.k0 / cfg.omega0!r} < {2.0 * sigma_marginal!r}"
        )
    grid = cfg.grid()
    psi0 = _epr_initial(cfg, grid)
    spec = EnsembleSpec(n=cfg.n_ensemble, seed=cfg.seed)
    x1_0, x2_0 = sample_born_2d(grid.axis(0), grid.axis(1), np.abs(psi0) ** 2, spec)

    x1_a, x2_a, _ = _epr_run_single(cfg, cfg.amp_b, x1_0, x2_0)
    x1_b, x2_b, _ = _epr_run_single(cfg, cfg.flip_b_amp, x1_0, x2_0)

    dz1 = np.abs(x1_a - x1_b)
    ks_marginal = ks_two_sample(x1_a, x1_b)
    report = ScenarioReport(
        scenario="epr",
        config_hash=chash,
        seed=cfg.seed,
        values={
            "entangled": cfg.entangled,
            "n": cfg.n_ensemble,
            "dz1_median": float(np.median(dz1)),
            "dz1_max": float(np.max(dz1)),
            "dz1_quantile_10": float(np.quantile(dz1, 0.10)),
            "ks_z1_marginal": float(ks_marginal),
            "amp_a": cfg.amp_a,
            "amp_b": cfg.amp_b,
            "flip_b_amp": cfg.flip_b_amp,
            "rng": "philox4x32-10(numpy)",
        },
    )
    report.values["dz1"] = dz1
    report.values["x1_final_a"] = x1_a
    report.values["x1_final_b"] = x1_b
    if outputs and "report" in outputs:
        vals = {k: v for k, v in report.values.items() if not isinstance(v, np.ndarray)}
        ScenarioReport(report.scenario, chash, cfg.seed, vals).write(outputs["report"])
    if outputs and "divergence_csv" in outputs:
        lines = [f"# config_hash={chash} tool_version={TOOL_VERSION}", "x1_0,x2_0,x1_final_a,x1_final_b,dz1"]
        for row in zip(x1_0, x2_0, x1_a, x1_b, dz1):
            lines.append(",".join(repr(float(v)) for v in row))
        with open(outputs["divergence_csv"], "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return report


# ---------------------------------------------------------------------------
# Cauchy surface recording


def record_cauchy_surface(cfg: CauchyConfig, outputs: dict | None = None,
                          config_hash: str | None = None) -> ScenarioReport:
    """Superdeterminism audit: dump u_ret/u_adv/u_sym on the t = surface_time
    hyperplane for two runs differing only in the gated setting, plus the
    difference maps.  The retarded difference must vanish (the surface only
    sees pre-interaction roots); the advanced difference carries the future
    setting."""
    chash = config_hash or dataclass_hash(cfg)
    if cfg.surface_time >= cfg.t_on:
        raise ConfigError(
            f"surface_time must precede the interaction: {cfg.surface_time!r} >= {cfg.t_on!r}"
        )
    sources = {}
    trajs = {}
    for name, amp in (("a", cfg.amp_on), ("b", cfg.amp_off)):
        bcfg = BeamSplitterConfig(
            omega0=cfg.omega0, sigma0=cfg.sigma0, x_start=cfg.x_start, p0=cfg.p0,
            domain=cfg.domain, nx=cfg.nx, dt=cfg.dt, t_end=cfg.t_end,
            barrier_center=cfg.barrier_center, barrier_width=cfg.barrier_width,
            n_ensemble=1, seed=cfg.seed,
        )
        grid = bcfg.grid()
        pot = gaussian_barrier(amp, center=cfg.barrier_center, width=cfg.barrier_width, t_on=cfg.t_on)
        state = WaveState(
            psi=gaussian_packet_field(grid, cfg.sigma0, cfg.x_start, cfg.p0),
            omega0=cfg.omega0, potential=pot, regime="schrodinger",
        )
        n_steps = int(round(cfg.t_end / cfg.dt))
        _, hist = evolve(state, n_steps, record_every=1)
        hist.finalize()
        x_path, checkpoints = transport_ensemble_1d(hist, np.array([cfg.z_start]), record_every=1)
        ts = np.concatenate([[hist.t[0]], [t for t, _ in checkpoints]])
        xs = np.concatenate([[cfg.z_start], [pos[0] for _, pos in checkpoints]])
        traj = trajectory_from_path(hist, ts, xs, cfg.omega0)
        trajs[name] = (ts, xs)
        sources[name] = source_from_trajectory(traj, cfg.omega0, cfg.g0, cfg.map_l0)

    x_surface = np.linspace(-cfg.surface_halfwidth, cfg.surface_halfwidth, cfg.surface_n)
    pts = np.stack(
        [np.full_like(x_surface, cfg.surface_time), x_surface,
         np.zeros_like(x_surface), np.zeros_like(x_surface)], axis=1,
    )
    from .farfield import u_field_batch

    dumps = {}
    masks = {}
    for name, src in sources.items():
        fields, m, _ = u_field_batch(src, pts)
        dumps[name] = fields
        masks[name] = m

    out_vals = {}
    diff = {}
    for part in ("retarded", "advanced", "symmetric"):
        both = masks["a"][part] & masks["b"][part]
        d = np.where(both, dumps["a"][part] - dumps["b"][part], np.nan + 0j)
        diff[part] = d
        scale = np.nanmax(np.abs(np.where(both, dumps["a"][part], np.nan + 0j)))
        finite = np.isfinite(d)
        out_vals[f"{part}_valid_points"] = int(np.sum(both))
        out_vals[f"{part}_max_abs_diff"] = float(np.nanmax(np.abs(d[finite]))) if finite.any() else float("nan")
        out_vals[f"{part}_max_rel_diff"] = (
            float(np.nanmax(np.abs(d[finite])) / scale) if finite.any() and scale > 0 else float("nan")
        )
    # interaction past-light-cone (Delta) intersection with the surface
    delta_mask = np.abs(x_surface - cfg.barrier_center) <= (cfg.t_on - cfg.surface_time)
    adv = diff["advanced"]
    inside = delta_mask & np.isfinite(adv)
    out_vals["adv_diff_inside_delta_max"] = float(np.max(np.abs(adv[inside]))) if inside.any() else 0.0
    report = ScenarioReport("cauchy_record", chash, cfg.seed, out_vals)
    report.values["x_surface"] = x_surface
    report.values["dumps"] = dumps
    report.values["diff"] = diff
    report.values["masks"] = masks
    report.values["delta_mask"] = delta_mask

    if outputs:
        meta = {"config_hash": chash, "tool_version": TOOL_VERSION, "scenario": "cauchy_record"}
        for name in ("a", "b"):
            for part in ("retarded", "advanced", "symmetric"):
                key = f"u{part[:3]}_{name}"
                if key in outputs:
                    write_field(
                        outputs[key],
                        FieldContainer(
                            axes=((float(x_surface[0]), float(x_surface[-1]), len(x_surface)),),
                            values=np.where(masks[name][part], dumps[name][part], np.nan + 0j),
                            dt=cfg.dt,
                            time_label=cfg.surface_time,
                            meta={**meta, "part": part, "setting": name, "axes": ["x"]},
                        ),
                    )
        for part in ("retarded", "advanced"):
            key = f"diff_{part[:3]}"
            if key in outputs:
                write_field(
                    outputs[key],
                    FieldContainer(
                        axes=((float(x_surface[0]), float(x_surface[-1]), len(x_surface)),),
                        values=diff[part],
                        dt=cfg.dt,
                        time_label=cfg.surface_time,
                        meta={**meta, "part": f"diff_{part}", "axes": ["x"]},
                    ),
                )
        if "report" in outputs:
            vals = {k: v for k, v in report.values.items() if not isinstance(v, (np.ndarray, dict))}
            ScenarioReport(report.scenario, chash, cfg.seed, vals).write(outputs["report"])
    return report
