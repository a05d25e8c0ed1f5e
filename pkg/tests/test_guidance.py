import numpy as np
import pytest

from dslab.errors import DslabError, NoRootError
from dslab.evolution import WaveState, evolve
from dslab.grids import GridSpec
from dslab.guidance import (
    CRITICAL,
    EnsembleSpec,
    SUBLUMINAL,
    TACHYONIC,
    find_hyperplane_lambda,
    integrate_trajectory,
    newton_residual,
    non_crossing_ok,
    read_trajectory_csv,
    sample_born_1d,
    sample_born_2d,
    transport_ensemble_1d,
    velocity,
    write_trajectory_csv,
)
from dslab.minkowski import minkowski_dot
from dslab.potentials import rotational_vector_potential
from dslab.scenarios import gaussian_packet_field
from dslab.stats import ks_distance_to_density
from dslab.waves import GaussianPacketNR, PlaneWave, StandingWave, TwoPlaneWave


def test_velocity_plane_wave():
    # omega = sqrt(1 + k^2), v = k/omega = 0.6 at k = 0.75
    gs = velocity(PlaneWave(omega0=1.0, k=0.75), np.zeros(4))
    assert gs.regime == SUBLUMINAL
    assert gs.zdot[1] / gs.zdot[0] == pytest.approx(0.6, abs=1e-12)
    assert minkowski_dot(gs.zdot, gs.zdot) == pytest.approx(1.0, abs=1e-12)


def test_velocity_rest_wave():
    gs = velocity(PlaneWave(omega0=1.0, k=0.0), np.array([0.3, 0.1, 0, 0]))
    assert np.allclose(gs.zdot, [1.0, 0.0, 0.0, 0.0], atol=1e-14)


def test_velocity_tachyonic_normalization():
    wave = TwoPlaneWave(omega0=1.0, k=1.0, eps=0.5)
    # fringe minimum at k x = pi/2
    gs = velocity(wave, np.array([0.0, np.pi / 2, 0.0, 0.0]))
    assert gs.regime == TACHYONIC
    assert minkowski_dot(gs.zdot, gs.zdot) == pytest.approx(-1.0, abs=1e-8)


def test_trajectory_straight_worldline():
    traj = integrate_trajectory(PlaneWave(omega0=1.0, k=0.75), np.zeros(4), lam_end=4.0, stride=0.1)
    assert traj.status == "completed"
    assert np.max(np.abs(traj.z[:, 1] - 0.6 * traj.z[:, 0])) < 1e-8


def test_trajectory_follows_packet_centroid():
    gp = GaussianPacketNR(omega0=4.0, sigma0=1.0, x0=0.0, p0=0.0)
    traj = integrate_trajectory(gp, np.zeros(4), lam_end=8.0, stride=0.1)
    # the center-started trajectory rides the (stationary) centroid
    assert np.max(np.abs(traj.z[:, 1])) < 0.01 * gp.sigma0
    assert traj.z[-1, 0] > 2.0


def test_tachyonic_crossing_continuous():
    wave = TwoPlaneWave(omega0=1.0, k=1.0, eps=0.5)
    traj = integrate_trajectory(wave, np.zeros(4), lam_end=8.0, stride=0.05)
    assert len(traj.events) >= 2
    ev_idx = [int(np.argmin(np.abs(traj.lam - e))) for e in traj.events]
    assert max(abs(traj.m2[i]) for i in ev_idx) < 1e-6
    tach = traj.regime == TACHYONIC
    assert tach.any()
    mink = traj.zdot[:, 0] ** 2 - np.sum(traj.zdot[:, 1:] ** 2, axis=1)
    assert np.max(np.abs(mink[tach] + 1.0)) < 1e-8
    assert np.max(np.abs(np.diff(traj.z[:, 1]))) < 0.15  # continuous through the cone
    assert np.all(np.diff(traj.lam) > 0)


def test_newton_residual_plane_wave():
    pw = PlaneWave(omega0=1.0, k=0.75)
    traj = integrate_trajectory(pw, np.zeros(4), lam_end=2.0, stride=0.05)
    _, rmax, rl2 = newton_residual(traj, pw)
    assert rmax < 1e-8


def test_newton_residual_convergence_order():
    gp = GaussianPacketNR(omega0=4.0, sigma0=1.0, x0=0.0, p0=2.0)
    l2s = []
    for st in (0.08, 0.04, 0.02):
        traj = integrate_trajectory(gp, np.array([0.0, 0.4, 0, 0]), lam_end=2.0, stride=st)
        _, _, l2 = newton_residual(traj, gp)
        l2s.append(l2)
    assert l2s[0] / l2s[1] > 3.5
    assert l2s[1] / l2s[2] > 3.5


def test_newton_lorentz_force_circular():
    pot = rotational_vector_potential(kappa=0.5, e=1.0)
    pw = PlaneWave(omega0=2.0, k=0.0, potential=pot)
    traj = integrate_trajectory(pw, np.array([0.0, 1.0, 0.0, 0.0]), lam_end=3.0, stride=0.01)
    m = np.sqrt(4.0 - 0.25)
    s = traj.lam / m
    assert np.max(np.abs(traj.z[:, 1] - np.cos(0.5 * s))) < 1e-8
    assert np.max(np.abs(traj.z[:, 2] + np.sin(0.5 * s))) < 1e-8
    _, rmax, _ = newton_residual(traj, pw)
    assert rmax < 1e-6


def test_hyperplane_uniform_closed_form():
    traj = integrate_trajectory(PlaneWave(omega0=1.0, k=0.75), np.zeros(4), lam_end=4.0, stride=0.05)
    lam = find_hyperplane_lambda(traj, np.array([2.0, 1.0, 0.0, 0.0]))
    assert lam == pytest.approx(1.75, abs=1e-10)


def test_hyperplane_point_on_trajectory():
    traj = integrate_trajectory(PlaneWave(omega0=1.0, k=0.75), np.zeros(4), lam_end=4.0, stride=0.05)
    z = traj.z[20]
    lam = find_hyperplane_lambda(traj, z)
    assert lam == pytest.approx(traj.lam[20], abs=1e-10)


def test_hyperplane_static_rest_frame():
    traj = integrate_trajectory(PlaneWave(omega0=1.0, k=0.0), np.zeros(4), lam_end=5.0, stride=0.1)
    lam = find_hyperplane_lambda(traj, np.array([2.7, 5.0, -1.0, 0.4]))
    assert lam == pytest.approx(2.7, abs=1e-10)


def test_hyperplane_no_root():
    traj = integrate_trajectory(PlaneWave(omega0=1.0, k=0.0), np.zeros(4), lam_end=1.0, stride=0.1)
    with pytest.raises(NoRootError):
        find_hyperplane_lambda(traj, np.array([50.0, 0.0, 0.0, 0.0]))


def test_born_uniform_ks():
    xs = np.linspace(0.0, 1.0, 201)
    pdf = np.ones_like(xs)
    pos = sample_born_1d(xs, pdf, EnsembleSpec(n=10000, seed=7))
    assert ks_distance_to_density(pos, xs, pdf) < 0.02


def test_born_gaussian_mean():
    xs = np.linspace(-6, 6, 801)
    pdf = np.exp(-(xs**2))
    n = 10000
    pos = sample_born_1d(xs, pdf, EnsembleSpec(n=n, seed=11))
    sigma = 1.0 / np.sqrt(2.0)
    assert abs(pos.mean()) < 3 * sigma / np.sqrt(n)


def test_born_narrow_support():
    xs = np.linspace(-10, 10, 2001)
    pdf = np.where(np.abs(xs - 1.0) < 0.05, 1.0, 0.0)
    pos = sample_born_1d(xs, pdf, EnsembleSpec(n=500, seed=3))
    assert np.all(np.abs(pos - 1.0) <= 0.06)


def test_born_zero_field_error():
    xs = np.linspace(0, 1, 64)
    with pytest.raises(DslabError):
        sample_born_1d(xs, np.zeros_like(xs), EnsembleSpec(n=10, seed=1))


def test_born_deterministic_replay():
    xs = np.linspace(-3, 3, 301)
    pdf = np.exp(-(xs**2) / 2)
    a = sample_born_1d(xs, pdf, EnsembleSpec(n=100, seed=42))
    b = sample_born_1d(xs, pdf, EnsembleSpec(n=100, seed=42))
    assert np.array_equal(a, b)
    c = sample_born_1d(xs, pdf, EnsembleSpec(n=100, seed=43))
    assert not np.array_equal(a, c)


def test_born_2d_marginals():
    xs = np.linspace(-5, 5, 201)
    ys = np.linspace(-5, 5, 201)
    pdf = np.exp(-(xs[:, None] ** 2) - (ys[None, :] - 1.0) ** 2 / 2)
    x1, x2 = sample_born_2d(xs, ys, pdf, EnsembleSpec(n=4000, seed=9))
    assert abs(x1.mean()) < 0.05
    assert abs(x2.mean() - 1.0) < 0.05
    assert abs(x1.std() - np.sqrt(0.5)) < 0.05
    assert abs(x2.std() - 1.0) < 0.05


def test_trajectory_csv_roundtrip(tmp_path):
    wave = TwoPlaneWave(omega0=1.0, k=1.0, eps=0.5)
    traj = integrate_trajectory(wave, np.zeros(4), lam_end=5.0, stride=0.2)
    path = tmp_path / "traj.csv"
    write_trajectory_csv(path, traj, run_id="t", seed=1, config_hash="h", tool_version="v")
    back = read_trajectory_csv(path)
    assert np.array_equal(back.lam, traj.lam)
    assert np.array_equal(back.z, traj.z)
    assert np.array_equal(back.zdot, traj.zdot)
    assert np.array_equal(back.regime, traj.regime)
    assert back.meta["seed"] == "1"


def test_trajectory_csv_deterministic(tmp_path):
    wave = PlaneWave(omega0=1.0, k=0.3)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        traj = integrate_trajectory(wave, np.zeros(4), lam_end=3.0, stride=0.1)
        write_trajectory_csv(p, traj, run_id="same", seed=5, config_hash="x", tool_version="v")
    assert a.read_bytes() == b.read_bytes()


def _small_history(n=512, t_end=30.0, amp=0.0):
    from dslab.potentials import gaussian_barrier

    grid = GridSpec(extents=((-60.0, 60.0, n),), dt=0.05)
    state = WaveState(
        psi=gaussian_packet_field(grid, 4.0, -20.0, 0.5),
        omega0=1.0,
        potential=gaussian_barrier(amp, width=1.0),
        regime="schrodinger",
    )
    _, hist = evolve(state, int(t_end / 0.05), record_every=1)
    return hist.finalize()


def test_transport_equivariance_free():
    hist = _small_history()
    xs = hist.grid.axis(0)
    x0 = np.sort(sample_born_1d(xs, hist.a2[0], EnsembleSpec(n=4000, seed=2)))
    xf, _ = transport_ensemble_1d(hist, x0)
    assert ks_distance_to_density(xf, xs, hist.a2[-1]) < 0.03


def test_transport_non_crossing_through_barrier():
    hist = _small_history(amp=0.1)
    xs = hist.grid.axis(0)
    x0 = np.sort(sample_born_1d(xs, hist.a2[0], EnsembleSpec(n=2000, seed=4)))
    xf, cps = transport_ensemble_1d(hist, x0, record_every=20)
    order = np.argsort(x0, kind="stable")
    for _, pos in cps:
        assert non_crossing_ok(order, pos, tol=1e-9)


def test_velocity_masked_node_error():
    from dslab.errors import MaskedNodeError

    wave = StandingWave(omega0=1.0, k=1.0)
    with pytest.raises(MaskedNodeError):
        velocity(wave, np.array([0.0, np.pi / 2, 0.0, 0.0]))
