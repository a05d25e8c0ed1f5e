import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dslab.minkowski import (
    FourVector,
    boost_x,
    minkowski_dot,
    project_onto_hyperplane,
)


def test_timelike_unit():
    assert minkowski_dot(FourVector(1, 0, 0, 0), FourVector(1, 0, 0, 0)) == 1.0


def test_null_vector():
    assert minkowski_dot(FourVector(1, 1, 0, 0), FourVector(1, 1, 0, 0)) == 0.0


def test_gamma_identity():
    v = 0.6
    gamma = 1.0 / np.sqrt(1 - v * v)
    u = FourVector(gamma, gamma * v, 0, 0)
    assert minkowski_dot(u, u) == pytest.approx(1.0, abs=1e-14)


def test_boost_identity():
    p = boost_x(FourVector(1, 0, 0, 0), 0.0)
    assert p == FourVector(1.0, 0.0, 0.0, 0.0)


def test_boost_hand_value():
    p = boost_x(FourVector(1, 0, 0, 0), 0.6)
    assert p.t == pytest.approx(1.25, abs=1e-14)
    assert p.x == pytest.approx(-0.75, abs=1e-14)


def test_boost_rejects_superluminal():
    with pytest.raises(ValueError):
        boost_x(FourVector(1, 0, 0, 0), 1.0)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(-5, 5), min_size=8, max_size=8),
    st.floats(-0.99, 0.99),
)
def test_boost_invariance_property(comps, v):
    a = np.array(comps[:4])
    b = np.array(comps[4:])
    before = minkowski_dot(a, b)
    after = minkowski_dot(boost_x(a, v), boost_x(b, v))
    scale = max(1.0, abs(before))
    assert abs(after - before) < 1e-12 * scale


def test_boost_square_preserved_random():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = rng.uniform(-3, 3, 4)
        v = rng.uniform(-0.99, 0.99)
        s0 = minkowski_dot(p, p)
        s1 = minkowski_dot(boost_x(p, v), boost_x(p, v))
        assert abs(s1 - s0) < 1e-12 * max(1.0, abs(s0))


def test_hyperplane_projection_orthogonal():
    zdot = np.array([1.25, 0.75, 0, 0])  # unit timelike
    xi = np.array([2.0, 1.0, 0.5, -0.3])
    proj = project_onto_hyperplane(xi, zdot)
    assert abs(minkowski_dot(proj, zdot)) < 1e-12
