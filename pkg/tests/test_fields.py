import numpy as np
import pytest

from dslab.errors import FieldError
from dslab.fieldio import FieldContainer, read_field, write_field
from dslab.grids import (
    ComplexScalarField,
    GridSpec,
    polar_decompose,
    quantum_potential,
    second_derivative,
)


def grid1d(lo=-10.0, hi=10.0, n=256, dt=0.01):
    return GridSpec(extents=((lo, hi, n),), dt=dt)


def test_gridspec_validation():
    with pytest.raises(FieldError):
        GridSpec(extents=((0.0, 1.0, 4),), dt=0.1)  # n too small
    with pytest.raises(FieldError):
        GridSpec(extents=((0.0, 1.0, 16),), dt=-0.1)
    with pytest.raises(FieldError):
        GridSpec(extents=tuple(), dt=0.1)


def test_polar_constant_field():
    g = grid1d()
    f = ComplexScalarField(g, np.ones(256, dtype=complex))
    a, phi, valid = polar_decompose(f)
    assert np.allclose(a, 1.0)
    assert np.allclose(phi, 0.0)
    assert valid.all()


def test_polar_plane_wave_unwrap_span():
    g = GridSpec(extents=((0.0, 10.0, 512),), dt=0.01)
    x = g.axis(0)
    f = ComplexScalarField(g, np.exp(2j * x))
    a, phi, valid = polar_decompose(f)
    span = phi[-1] - phi[0]
    assert span == pytest.approx(20.0, rel=1e-10)
    assert np.all(np.diff(phi) > 0)


def test_polar_roundtrip_identity():
    g = grid1d()
    x = g.axis(0)
    vals = (1 + 0.3 * np.sin(x)) * np.exp(1j * (0.7 * x + 0.2 * x**2))
    f = ComplexScalarField(g, vals)
    a, phi, valid = polar_decompose(f)
    recon = a * np.exp(1j * phi)
    assert np.max(np.abs(recon - vals)[valid] / np.abs(vals)[valid]) < 1e-12


def test_polar_masks_nodes():
    g = grid1d()
    x = g.axis(0)
    vals = np.cos(x).astype(complex)
    vals[100] = 1e-12  # a resolved node point below the amplitude floor
    f = ComplexScalarField(g, vals)
    a, phi, valid = polar_decompose(f)
    assert valid.sum() == len(x) - 1
    assert not valid[100]


def test_polar_zero_field_error():
    g = grid1d()
    with pytest.raises(FieldError, match="no phase"):
        polar_decompose(ComplexScalarField(g, np.zeros(256, dtype=complex)))


def test_quantum_potential_cos():
    g = GridSpec(extents=((-3.0, 3.0, 1024),), dt=0.01)
    x = g.axis(0)
    a = np.cos(1.0 * x)
    q, valid = quantum_potential(a, (g.spacing(0),), static=True)
    inner = valid & (np.abs(np.abs(x) - np.pi / 2) > 0.3)
    inner[:4] = inner[-4:] = False
    assert np.max(np.abs(q[inner] - 1.0)) < 1e-4


def test_quantum_potential_exponential():
    g = GridSpec(extents=((-2.0, 2.0, 1024),), dt=0.01)
    x = g.axis(0)
    a = np.exp(0.5 * x)
    q, valid = quantum_potential(a, (g.spacing(0),), static=True)
    assert np.max(np.abs(q[valid] - (-0.25))) < 1e-5


def test_quantum_potential_constant():
    g = grid1d()
    q, valid = quantum_potential(np.ones(256), (g.spacing(0),), static=True)
    assert np.max(np.abs(q[valid])) < 1e-12


def test_quantum_potential_flags_nodes():
    g = grid1d()
    x = g.axis(0)
    a = np.abs(np.cos(x))
    a[100] = 1e-14  # below the floor: flagged invalid, not silently zeroed
    q, valid = quantum_potential(a, (g.spacing(0),), static=True)
    assert not valid[100]
    assert np.isnan(q[100])


def test_quantum_potential_second_order_convergence():
    # halving the spacing must reduce the error by >= 3.5x
    errs = []
    for n in (512, 1024):
        g = GridSpec(extents=((-2.0, 2.0, n + 1),), dt=0.01)
        x = g.axis(0)
        a = np.exp(-(x**2) / 2) + 1.5
        q, valid = quantum_potential(a, (g.spacing(0),), static=True)
        exact = -((x**2 - 1.0) * np.exp(-(x**2) / 2)) / a * -1.0
        exact = -(np.exp(-(x**2) / 2) * (x**2 - 1.0)) / a
        errs.append(np.max(np.abs(q - exact)[valid]))
    assert errs[0] / errs[1] > 3.5


def test_quantum_potential_time_series():
    g = grid1d()
    x = g.axis(0)
    dt = 0.01
    a_of = lambda t: np.cosh(0.5 * (x - 0.1 * t**2 / 2)) ** -1 + 2.0
    q, valid = quantum_potential(
        a_of(0.0), (g.spacing(0),), dt=dt, a_prev=a_of(-dt), a_next=a_of(dt)
    )
    assert valid.all()
    assert np.isfinite(q).all()


def test_second_derivative_boundary_order():
    xs = np.linspace(0, 1, 200)
    h = xs[1] - xs[0]
    f = np.sin(3 * xs)
    d2 = second_derivative(f, h)
    assert np.max(np.abs(d2 - (-9 * np.sin(3 * xs)))) < 5e-3


def test_field_container_roundtrip(tmp_path):
    path = tmp_path / "f.dslab"
    vals = np.arange(12, dtype=float).reshape(3, 4) + 1j * np.ones((3, 4))
    c = FieldContainer(axes=((0.0, 1.0, 3), (0.0, 2.0, 4)), values=vals, dt=0.5,
                       time_label=1.5, meta={"config_hash": "abc", "axes": ["t", "x"]})
    write_field(path, c)
    back = read_field(path)
    assert back.axes == ((0.0, 1.0, 3), (0.0, 2.0, 4))
    assert back.dt == 0.5 and back.time_label == 1.5
    assert back.meta["config_hash"] == "abc"
    assert np.array_equal(back.values, vals)


def test_field_container_real_roundtrip(tmp_path):
    path = tmp_path / "g.dslab"
    vals = np.linspace(0, 1, 16)
    write_field(path, FieldContainer(axes=((0.0, 1.0, 16),), values=vals))
    back = read_field(path)
    assert np.array_equal(back.values, vals)
    assert not np.iscomplexobj(back.values)


def test_field_container_bad_magic(tmp_path):
    path = tmp_path / "bad.dslab"
    path.write_bytes(b"NOTDSLAB" + b"\x00" * 64)
    with pytest.raises(FieldError, match="magic"):
        read_field(path)
