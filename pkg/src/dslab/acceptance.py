"""Acceptance suite: every primary criterion as a callable check.

Each criterion returns a CriterionResult with its stated tolerance applied;
`run_all` executes them in order and is what `dslab verify` and the pytest
acceptance module both call.  Fast mode shrinks ensembles/resolutions for a
smoke pass (tolerances that scale with 1/sqrt(n) are widened accordingly and
the mode is recorded in the result).

Known-failing criterion: radial_bvp_vs_interpolation.  The exact regular
solution of the radial profile equation carries a physical scattering phase
shift delta ~ -3 omega l0 relative to the zero-phase interpolation formula,
which the 1% pointwise band-excluded tolerance cannot absorb at
omega*l0 = 0.01; the criterion is evaluated literally and reports FAIL with
the measured numbers (see the test suite for the properties that do hold).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .evolution import evolve
from .farfield import (
    accelerating_source,
    boosted_monopole_reference,
    monopole_reference,
    near_singularity_diagnostics,
    static_source,
    u_field_point,
    uniform_source,
)
from .guidance import (
    EnsembleSpec,
    SUBLUMINAL,
    TACHYONIC,
    integrate_trajectory,
    newton_residual,
    sample_born_1d,
    transport_ensemble_1d,
)
from .scenarios import (
    BeamSplitterConfig,
    CauchyConfig,
    EprConfig,
    record_cauchy_surface,
    run_beam_splitter,
    run_epr,
    tune_barrier,
)
from .soliton import (
    SolitonParams,
    alpha_evolution,
    lane_emden_profile,
    lane_emden_residual_relative,
    solve_radial_profile,
)
from .stats import ks_distance_to_density, philox
from .waves import GaussianPacketNR, TwoPlaneWave

EPR_INTEGRATOR_TOL = 1e-6  # documented transport accuracy bound (see tests)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    runtime_s: float
    detail: str
    expected_fail: bool = False

    def line(self) -> str:
        status = "PASS" if self.passed else ("FAIL (known, see notes)" if self.expected_fail else "FAIL")
        return f"{status:24s} {self.name:38s} [{self.runtime_s:7.2f}s] {self.detail}"


@dataclass
class AcceptanceContext:
    fast: bool = False
    cache: dict = field(default_factory=dict)

    @property
    def n_ensemble(self) -> int:
        return 2500 if self.fast else 10000

    @property
    def ks_tol(self) -> float:
        # KS sampling noise scales as 1/sqrt(n)
        return 0.02 * np.sqrt(10000 / self.n_ensemble)

    @property
    def frac_tol(self) -> float:
        return 0.02 * np.sqrt(10000 / self.n_ensemble)

    def beam_cfg(self, **over) -> BeamSplitterConfig:
        base = dict(n_ensemble=self.n_ensemble)
        if self.fast:
            base.update(nx=2048, dt=0.1)
        base.update(over)
        return BeamSplitterConfig(**base)

    def tuned_amplitude(self) -> float:
        if "amp" not in self.cache:
            self.cache["amp"] = tune_barrier(self.beam_cfg())
        return self.cache["amp"]

    def barrier_report(self):
        if "barrier_report" not in self.cache:
            cfg = self.beam_cfg(barrier_amplitude=self.tuned_amplitude())
            self.cache["barrier_report"] = (cfg, run_beam_splitter(cfg))
        return self.cache["barrier_report"]


def _timed(fn):
    t0 = time.time()
    out = fn()
    return out, time.time() - t0


def crit_lane_emden_exactness(ctx) -> CriterionResult:
    def body():
        p = SolitonParams(g0=4 * np.pi, l0=1.0, omega0=0.01)
        r = np.geomspace(1e-3, 1e3, 2000)
        worst = max(lane_emden_residual_relative(p, a, r) for a in (0.5, 1.0, 2.0, 7.0))
        return worst

    worst, dt = _timed(body)
    ok = worst < 1e-12 and dt < 1.0
    return CriterionResult(
        "lane_emden_exactness", ok, dt, f"max relative residual {worst:.2e} (tol 1e-12), runtime<1s"
    )


def crit_dilation_invariance(ctx) -> CriterionResult:
    def body():
        p = SolitonParams(g0=4 * np.pi, l0=1.0, omega0=0.01)
        rng = philox(101)
        alphas = rng.uniform(0.05, 10.0, 1000)
        rs = rng.uniform(0.0, 100.0, 1000)
        lhs = np.sqrt(alphas) * lane_emden_profile(p, 1.0, alphas * rs)
        rhs = lane_emden_profile(p, alphas, rs)
        return float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))

    worst, dt = _timed(body)
    ok = worst <= 1e-14
    return CriterionResult(
        "dilation_invariance", ok, dt, f"max relative deviation {worst:.2e} over 1000 random (alpha, r) (tol 1e-14)"
    )


def crit_radial_bvp_vs_interpolation(ctx) -> CriterionResult:
    def body():
        p = SolitonParams(g0=4 * np.pi, l0=0.01, omega0=1.0)
        omega = 1.0
        prof = solve_radial_profile(p, omega=omega, r_max=3.0 / omega)
        ref = prof.interpolation_reference()
        # exclusion bands: total width 5% of the zero spacing pi/omega
        zero_dist = np.abs(((prof.r * omega - np.pi / 2) % np.pi))
        zero_dist = np.minimum(zero_dist, np.pi - zero_dist)
        keep = zero_dist > 0.025 * np.pi
        rel = np.abs(prof.f - ref) / np.abs(ref)
        worst = float(np.max(rel[keep]))
        # diagnostics: fitted far-field amplitude/phase and envelope-relative error
        far = prof.r * omega > 1.5
        design = np.stack([np.cos(omega * prof.r[far]), np.sin(omega * prof.r[far])], axis=1)
        coef, *_ = np.linalg.lstsq(design / prof.r[far, None], prof.f[far], rcond=None)
        amp_fit = float(np.hypot(*coef))
        delta_fit = float(np.arctan2(-coef[1], coef[0]))
        env = lane_emden_profile(p, prof.alpha, prof.r)
        env_rel = float(np.max(np.abs(prof.f - ref) / env))
        return worst, amp_fit, delta_fit, env_rel

    (worst, amp_fit, delta_fit, env_rel), dt = _timed(body)
    ok = worst < 0.01 and dt < 30.0
    return CriterionResult(
        "radial_bvp_vs_interpolation",
        ok,
        dt,
        f"max pointwise rel dev {worst:.3f} (tol 0.01, bands excluded); measured scattering "
        f"phase delta={delta_fit:+.4f} rad ~ -3*omega*l0, amplitude {amp_fit:.5f}, "
        f"envelope-relative dev {env_rel:.3f}",
        expected_fail=True,
    )


def crit_monopole_closure(ctx) -> CriterionResult:
    def body():
        omega0, g0 = 1.0, 1.0
        src = static_source(omega0, g0, lam_range=(-25.0, 25.0))
        rng = philox(202)
        worst = 0.0
        for _ in range(100):
            t = rng.uniform(-5.0, 5.0)
            big_r = rng.uniform(0.1 / omega0, 10.0 / omega0)
            x = np.array([t, big_r, 0.0, 0.0])
            vals = u_field_point(src, x)
            for part in ("symmetric", "retarded", "advanced"):
                ref = monopole_reference(omega0, g0, t, big_r, part)
                worst = max(worst, abs(vals[part] - ref) / abs(ref))
        return worst

    worst, dt = _timed(body)
    ok = worst < 1e-10
    return CriterionResult(
        "monopole_closure", ok, dt,
        f"max relative deviation {worst:.2e} over 100 random (t,R), all parts (tol 1e-10)"
    )


def crit_phase_slope_discontinuity(ctx) -> CriterionResult:
    def body():
        omega0 = 1.0
        src = static_source(omega0, 1.0, lam_range=(-25.0, 25.0), l0=1e-4)
        r_list = np.geomspace(2e-3, 2e-2, 14) / omega0
        reps = near_singularity_diagnostics(src, 3.0, r_list)
        slope_ret = reps["retarded"].phase_slope
        slope_adv = reps["advanced"].phase_slope
        # O(r^2) exponent on a smooth accelerating worldline
        sacc = accelerating_source(
            omega0, 1.0, accel=0.2, s_ddot=-0.3, g_rate=0.1, lam_range=(-3.0, 3.0), l0=1e-5
        )
        racc = np.geomspace(5e-4, 8e-3, 14)
        rep_acc = near_singularity_diagnostics(sacc, 0.0, racc)
        return slope_ret, slope_adv, rep_acc["symmetric"].exponent, reps["symmetric"].phase_slope

    (s_ret, s_adv, expn, s_sym), dt = _timed(body)
    omega0 = 1.0
    ok = (
        abs(s_ret - omega0) < 0.01 * omega0
        and abs(s_adv + omega0) < 0.01 * omega0
        and expn >= 1.9
    )
    return CriterionResult(
        "phase_slope_discontinuity", ok, dt,
        f"d_r S ret {s_ret:+.4f} adv {s_adv:+.4f} (want +/-1 within 1%), symmetric slope "
        f"{s_sym:+.1e}, O(r^2) exponent {expn:.3f} (want >=1.9)"
    )


def crit_guidance_newton_consistency(ctx) -> CriterionResult:
    def body():
        gp = GaussianPacketNR(omega0=4.0, sigma0=1.0, x0=0.0, p0=2.0)
        z0 = np.array([0.0, 0.4, 0.0, 0.0])
        strides = [0.16, 0.08, 0.04, 0.02]
        l2s = []
        for st in strides:
            traj = integrate_trajectory(gp, z0, lam_end=2.0, stride=st)
            _, _, l2 = newton_residual(traj, gp)
            l2s.append(l2)
        slope = float(np.polyfit(np.log(strides[1:]), np.log(l2s[1:]), 1)[0])
        return strides, l2s, slope

    (strides, l2s, slope), dt = _timed(body)
    ratios = [l2s[i] / l2s[i + 1] for i in range(len(l2s) - 1)]
    ok = slope >= 1.9
    return CriterionResult(
        "guidance_newton_consistency", ok, dt,
        f"residual L2 {['%.2e' % v for v in l2s]} at strides {strides}; order {slope:.2f} (want >=1.9)"
    )


def crit_equivariance(ctx) -> CriterionResult:
    def body():
        # free spreading
        cfg_free = ctx.beam_cfg(barrier_amplitude=0.0, t_end=100.0)
        rep_free = run_beam_splitter(cfg_free)
        hist = rep_free.values["history"]
        xs = hist.grid.axis(0)
        ks_free = ks_distance_to_density(rep_free.values["final_positions"], xs, hist.a2[-1])
        # through the tuned barrier (shared with the Fig-2a criterion)
        cfg_b, rep_b = ctx.barrier_report()
        hist_b = rep_b.values["history"]
        ks_barrier = ks_distance_to_density(
            rep_b.values["final_positions"], hist_b.grid.axis(0), hist_b.a2[-1]
        )
        return ks_free, ks_barrier

    (ks_free, ks_barrier), dt = _timed(body)
    tol = ctx.ks_tol
    ok = ks_free < tol and ks_barrier < tol and dt < 300.0
    return CriterionResult(
        "equivariance", ok, dt,
        f"KS free {ks_free:.4f}, KS barrier {ks_barrier:.4f} at n={ctx.n_ensemble} "
        f"(tol {tol:.3f}), runtime<5min"
    )


def crit_beam_splitter_fig2a(ctx) -> CriterionResult:
    def body():
        cfg, rep = ctx.barrier_report()
        return rep

    rep, dt = _timed(body)
    frac = rep.values["reflected_fraction"]
    ok = abs(frac - 0.5) <= ctx.frac_tol and rep.values["non_crossing"]
    return CriterionResult(
        "beam_splitter_fig2a", ok, dt,
        f"reflected fraction {frac:.4f} (want 0.50+/-{ctx.frac_tol:.3f}), non-crossing "
        f"{rep.values['non_crossing']}, monotone threshold {rep.values['classification_monotone']}, "
        f"unclassified {rep.values['unclassified_count']}"
    )


def crit_tachyonic_crossing(ctx) -> CriterionResult:
    def body():
        wave = TwoPlaneWave(omega0=1.0, k=1.0, eps=0.5)
        traj = integrate_trajectory(wave, np.zeros(4), lam_end=8.0, stride=0.05)
        ev_idx = [int(np.argmin(np.abs(traj.lam - e))) for e in traj.events]
        m2_events = [abs(traj.m2[i]) for i in ev_idx]
        mink = traj.zdot[:, 0] ** 2 - np.sum(traj.zdot[:, 1:] ** 2, axis=1)
        tach = traj.regime == TACHYONIC
        tach_norm = float(np.max(np.abs(mink[tach] + 1.0))) if tach.any() else np.nan
        alphas = alpha_evolution(traj.m2, omega0=1.0)
        alpha_event = max(float(alphas[i]) for i in ev_idx) if ev_idx else np.nan
        gap = float(np.max(np.abs(np.diff(traj.z[:, 1]))))
        return traj, m2_events, tach_norm, alpha_event, gap

    (traj, m2_events, tach_norm, alpha_event, gap), dt = _timed(body)
    ok = (
        len(m2_events) >= 2
        and max(m2_events) < 1e-6
        and tach_norm < 1e-8
        and alpha_event < 0.05
        and traj.status == "completed"
        and bool(np.all(np.diff(traj.lam) > 0))
    )
    return CriterionResult(
        "tachyonic_crossing", ok, dt,
        f"{len(m2_events)} crossings, max|M^2| at events {max(m2_events):.1e} (tol 1e-6), "
        f"tachyonic |zdot.zdot+1| {tach_norm:.1e} (tol 1e-8), alpha at event {alpha_event:.1e} -> 0, "
        f"max x-gap {gap:.3f}"
    )


def crit_epr_audit(ctx) -> CriterionResult:
    def body():
        n = ctx.n_ensemble
        kw = dict(n_ensemble=n, seed=777)
        if ctx.fast:
            kw.update(nx=256, dt=0.04)
        rep = run_epr(EprConfig(**kw))
        repp = run_epr(EprConfig(entangled=False, **kw))
        return rep, repp

    (rep, repp), dt = _timed(body)
    q10 = rep.values["dz1_quantile_10"]
    ks = rep.values["ks_z1_marginal"]
    prod_max = float(np.max(repp.values["dz1"]))
    ok = (
        q10 > 100 * EPR_INTEGRATOR_TOL
        and ks < ctx.ks_tol
        and prod_max < 1e-8
        and dt < 600.0
    )
    return CriterionResult(
        "epr_audit", ok, dt,
        f"entangled dz1 10th-pct {q10:.3e} (> {100 * EPR_INTEGRATOR_TOL:.0e}), marginal KS {ks:.4f} "
        f"(tol {ctx.ks_tol:.3f}), product-control max dz1 {prod_max:.2e} (tol 1e-8), runtime<10min"
    )


def crit_superdeterminism_signature(ctx) -> CriterionResult:
    def body():
        kw = {}
        if ctx.fast:
            kw.update(nx=2048, dt=0.1, surface_n=191)
        rep = record_cauchy_surface(CauchyConfig(**kw))
        return rep

    rep, dt = _timed(body)
    adv_rel = rep.values["advanced_max_rel_diff"]
    ret_abs = rep.values["retarded_max_abs_diff"]
    ok = adv_rel > 1e-3 and ret_abs < 1e-10
    return CriterionResult(
        "superdeterminism_signature", ok, dt,
        f"u_adv setting-flip diff {adv_rel:.3e} relative (want >1e-3) on the pre-interaction "
        f"surface; retarded-only control {ret_abs:.1e} (tol 1e-10); inside-Delta max "
        f"{rep.values['adv_diff_inside_delta_max']:.1e}"
    )


CRITERIA = [
    crit_lane_emden_exactness,
    crit_dilation_invariance,
    crit_radial_bvp_vs_interpolation,
    crit_monopole_closure,
    crit_phase_slope_discontinuity,
    crit_guidance_newton_consistency,
    crit_equivariance,
    crit_beam_splitter_fig2a,
    crit_tachyonic_crossing,
    crit_epr_audit,
    crit_superdeterminism_signature,
]


def run_all(fast: bool = False, verbose: bool = True) -> list[CriterionResult]:
    ctx = AcceptanceContext(fast=fast)
    results = []
    for crit in CRITERIA:
        res = crit(ctx)
        results.append(res)
        if verbose:
            print(res.line(), flush=True)
    return results
