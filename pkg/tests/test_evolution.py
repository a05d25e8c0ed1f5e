import numpy as np
import pytest

from dslab.errors import FieldError, StabilityError
from dslab.evolution import (
    KleinGordonEvolver,
    WaveState,
    continuity_residual,
    evolve,
    kg_charge,
    norm_l2,
    nr_continuity_residual,
)
from dslab.grids import ComplexScalarField, GridSpec
from dslab.potentials import constant_scalar, gaussian_barrier
from dslab.scenarios import gaussian_packet_field


def schrodinger_state(n=1024, L=200.0, dt=0.02, sigma0=1.0, x0=0.0, p0=0.0, potential=None):
    grid = GridSpec(extents=((-L / 2, L / 2, n),), dt=dt)
    kw = {} if potential is None else {"potential": potential}
    return WaveState(
        psi=gaussian_packet_field(grid, sigma0, x0, p0),
        omega0=1.0,
        regime="schrodinger",
        **kw,
    )


def test_norm_conserved_1000_steps():
    state = schrodinger_state(dt=0.02)
    n0 = norm_l2(state)
    out, _ = evolve(state, 1000)
    assert abs(norm_l2(out) - n0) / n0 < 1e-8


def test_gaussian_spreading_width():
    # sigma(t) = sigma0 sqrt(1 + (t/(2 m sigma0^2))^2) -> sqrt(2) at t=2
    state = schrodinger_state(n=2048, L=100.0, dt=0.002, sigma0=1.0)
    out, _ = evolve(state, 1000)
    x = out.grid.axis(0)
    dens = np.abs(out.psi.values) ** 2
    dx = out.grid.spacing(0)
    mean = np.sum(x * dens) * dx / (np.sum(dens) * dx)
    var = np.sum((x - mean) ** 2 * dens) * dx / (np.sum(dens) * dx)
    assert np.sqrt(var) == pytest.approx(np.sqrt(2.0), rel=0.01)


def test_plane_wave_eigenstate_phase():
    # amplitude constant; phase advances by -omega*t within 1e-6
    n, L, dt = 256, 64.0, 0.001
    grid = GridSpec(extents=((-L / 2, L / 2, n),), dt=dt)
    x = grid.axis(0)
    k = 2.0 * np.pi / (L * n / (n - 1)) * 8
    psi0 = np.exp(1j * k * x)
    state = WaveState(psi=ComplexScalarField(grid, psi0), omega0=1.0, regime="schrodinger")
    steps = 1000
    out, _ = evolve(state, steps)
    omega = k**2 / 2.0
    expected = psi0 * np.exp(-1j * omega * dt * steps)
    assert np.max(np.abs(np.abs(out.psi.values) - 1.0)) < 1e-12
    phase_err = np.angle(out.psi.values / expected)
    assert np.max(np.abs(phase_err)) < 1e-6


def test_gauge_constant_shift():
    # V -> V + c shifts d_t S by -e*c, leaving |psi|^2 and M^2 unchanged
    c = 0.35
    base = schrodinger_state(dt=0.01, p0=0.4)
    shifted = schrodinger_state(dt=0.01, p0=0.4, potential=constant_scalar(c, e=1.0))
    out0, _ = evolve(base, 500)
    out1, _ = evolve(shifted, 500)
    t = 500 * 0.01
    assert np.max(np.abs(np.abs(out1.psi.values) ** 2 - np.abs(out0.psi.values) ** 2)) < 1e-8
    ratio = out1.psi.values / out0.psi.values
    good = np.abs(out0.psi.values) > 1e-6
    assert np.max(np.abs(ratio[good] - np.exp(-1j * c * t))) < 1e-8


def kg_state(n=512, L=64.0, dt=None, k=None, omega0=1.0):
    grid_dx = L / (n - 1)
    dt = dt if dt is not None else 0.4 * grid_dx
    grid = GridSpec(extents=((-L / 2, L / 2, n),), dt=dt)
    x = grid.axis(0)
    period_L = L * n / (n - 1)
    k = 2 * np.pi / period_L * 6 if k is None else k
    omega = np.sqrt(omega0**2 + k**2)
    psi0 = np.exp(1j * k * x)
    dtpsi0 = -1j * omega * psi0
    state = WaveState(
        psi=ComplexScalarField(grid, psi0), omega0=omega0, regime="klein_gordon",
    )
    ev = KleinGordonEvolver(state)
    prev = ev.prev_from_velocity(psi0, dtpsi0)
    state.prev = ComplexScalarField(grid, prev, time_label=-dt)
    return state, k, omega


def test_kg_cfl_enforced():
    grid = GridSpec(extents=((-10.0, 10.0, 64),), dt=1.0)
    state = WaveState(
        psi=ComplexScalarField(grid, np.ones(64, dtype=complex)),
        omega0=1.0,
        regime="klein_gordon",
        prev=ComplexScalarField(grid, np.ones(64, dtype=complex)),
    )
    with pytest.raises(StabilityError, match="CFL"):
        evolve(state, 1)


def test_kg_needs_prev():
    grid = GridSpec(extents=((-10.0, 10.0, 64),), dt=0.05)
    state = WaveState(
        psi=ComplexScalarField(grid, np.ones(64, dtype=complex)),
        omega0=1.0,
        regime="klein_gordon",
    )
    with pytest.raises(FieldError, match="previous slice"):
        evolve(state, 1)


def test_kg_charge_conserved():
    state, k, omega = kg_state()
    q0 = kg_charge(state)
    out, _ = evolve(state, 1000)
    q1 = kg_charge(out)
    assert abs(q1 - q0) / abs(q0) < 1e-6


def test_kg_dispersion_second_order():
    errs = []
    for n, steps in ((256, 200), (512, 400)):
        state, k, omega = kg_state(n=n)
        dt = state.grid.dt
        out, hist = evolve(state, steps, record_every=1)
        # unwrap the single mode's phase across slices; slope = -omega_disc
        series = np.array([s[0] for s in hist.slices])
        phase = np.unwrap(np.angle(series))
        slope = np.polyfit(hist.times, phase, 1)[0]
        errs.append(abs(-slope - omega))
    assert errs[0] / errs[1] > 3.0  # halving dx and dt cuts the error ~4x


def test_kg_rejects_charged_potential():
    grid = GridSpec(extents=((-10.0, 10.0, 64),), dt=0.05)
    state = WaveState(
        psi=ComplexScalarField(grid, np.ones(64, dtype=complex)),
        omega0=1.0,
        regime="klein_gordon",
        potential=gaussian_barrier(1.0),
        prev=ComplexScalarField(grid, np.ones(64, dtype=complex)),
    )
    with pytest.raises(FieldError, match="uncharged"):
        evolve(state, 1)


def test_nan_aborts_with_diagnostic():
    state = schrodinger_state(n=64, L=10.0)
    state.psi.values[3] = np.nan
    with pytest.raises(StabilityError, match="step"):
        evolve(state, 2)


def test_continuity_plane_wave_exact():
    n, L = 256, 64.0
    grid = GridSpec(extents=((-L / 2, L / 2, n),), dt=0.01)
    x = grid.axis(0)
    # commensurate mode: exactly 6 periods on the periodic domain
    k = 2 * np.pi / (L * n / (n - 1)) * 6
    omega = np.sqrt(1 + k**2)
    slices = [np.exp(1j * (k * x - omega * t)) for t in (-0.01, 0.0, 0.01)]
    resid, l2 = continuity_residual(slices[0], slices[1], slices[2], grid)
    assert np.max(np.abs(resid)) < 1e-10


def test_continuity_flags_corruption():
    n, L = 256, 64.0
    grid = GridSpec(extents=((-L / 2, L / 2, n),), dt=0.01)
    x = grid.axis(0)
    k = 2 * np.pi / (L * n / (n - 1)) * 6
    omega = np.sqrt(1 + k**2)
    mk = lambda t: np.exp(1j * (k * x - omega * t))
    bad = mk(0.0)
    bad[: n // 2] *= 1.5
    resid, l2 = continuity_residual(mk(-0.01), bad, mk(0.01), grid)
    assert np.max(np.abs(resid)) > 0.1


def test_continuity_refinement_order():
    # nonrelativistic current residual of the evolved packet under grid
    # refinement (the centered-difference measurement dominates, order 2)
    l2s = []
    for n, dt, steps in ((512, 0.02, 50), (1024, 0.02, 50)):
        state = schrodinger_state(n=n, L=100.0, dt=dt, sigma0=2.0, p0=0.5)
        out, hist = evolve(state, steps + 1, record_every=1)
        psi = hist.slices
        _, l2 = nr_continuity_residual(psi[steps - 1], psi[steps], psi[steps + 1],
                                       state.grid, mass=1.0)
        l2s.append(l2)
    assert l2s[0] / l2s[1] > 3.0


def test_sponge_damps_norm():
    state = schrodinger_state(n=512, L=50.0, sigma0=1.0, x0=15.0, p0=2.0)
    state = WaveState(
        psi=state.psi, omega0=1.0, regime="schrodinger", sponge_width=10.0, sponge_rate=2.0
    )
    out, _ = evolve(state, 600)
    assert norm_l2(out) < 0.7  # the packet ran into the absorbing layer
