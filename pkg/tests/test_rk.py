import numpy as np
import pytest

from dslab import rk


def test_exponential_accuracy():
    sol = rk.integrate_adaptive(lambda t, y: y, 0.0, np.array([1.0]), 1.0, rtol=1e-10)
    assert sol.status == rk.STATUS_DONE
    assert sol.ys[-1, 0] == pytest.approx(np.e, rel=1e-9)


def test_oscillator_long_run():
    def f(t, y):
        return np.array([y[1], -y[0]])

    sol = rk.integrate_adaptive(f, 0.0, np.array([1.0, 0.0]), 20 * np.pi, rtol=1e-11, atol=1e-13)
    assert sol.ys[-1, 0] == pytest.approx(1.0, abs=1e-7)


def test_event_location_precision():
    # y = cos(t): event at t = pi/2 located by sub-step re-integration
    def f(t, y):
        return np.array([y[1], -y[0]])

    ev = rk.EventSpec(lambda t, y: y[0], terminal=True, name="zero")
    sol = rk.integrate_adaptive(
        f, 0.0, np.array([1.0, 0.0]), 10.0, rtol=1e-10, events=(ev,)
    )
    assert sol.status == rk.STATUS_EVENT
    name, te, ye = sol.events[0]
    assert te == pytest.approx(np.pi / 2, abs=1e-9)
    assert abs(ye[0]) < 1e-12  # the event residual itself is pinned to ~0


def test_nonterminal_events_recorded():
    def f(t, y):
        return np.array([1.0])

    ev = rk.EventSpec(lambda t, y: np.sin(y[0]), terminal=False, name="sin")
    sol = rk.integrate_adaptive(f, 0.0, np.array([0.1]), 7.0, events=(ev,), rtol=1e-9)
    crossings = [e[1] for e in sol.events]
    assert len(crossings) == 2
    assert crossings[0] == pytest.approx(np.pi - 0.1, abs=1e-10)


def test_min_step_collapse_status():
    def f(t, y):
        return np.array([1.0 / max(1e-300, 1.0 - t) ** 2])

    sol = rk.integrate_adaptive(f, 0.0, np.array([0.0]), 2.0, rtol=1e-10, max_steps=20000)
    assert sol.status == rk.STATUS_MIN_STEP
    assert "step" in sol.message


def test_hermite_resampling():
    sol = rk.integrate_adaptive(lambda t, y: np.array([np.cos(t)]), 0.0, np.array([0.0]), 3.0, rtol=1e-10)
    tq = np.linspace(0.0, 3.0, 37)
    yq = sol.hermite(tq)[:, 0]
    assert np.max(np.abs(yq - np.sin(tq))) < 1e-5  # cubic between accepted steps


def test_backward_integration():
    sol = rk.integrate_adaptive(lambda t, y: np.array([1.0]), 0.0, np.array([0.0]), -2.0, rtol=1e-10)
    assert sol.ys[-1, 0] == pytest.approx(-2.0, abs=1e-12)
