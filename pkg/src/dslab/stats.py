"""Sampling statistics helpers and the named deterministic RNG.

The random source is Philox4x32-10 (counter-based) as shipped by numpy; the
algorithm identity is fixed so alternate implementations can replicate
streams from the same integer seed.
"""

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "philox4x32-10(numpy)"


def philox(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed)))


def cdf_on_grid(xs: np.ndarray, pdf: np.ndarray) -> np.ndarray:
    """Normalized trapezoid CDF of a sampled pdf."""
    xs = np.asarray(xs, dtype=float)
    pdf = np.asarray(pdf, dtype=float)
    seg = 0.5 * (pdf[1:] + pdf[:-1]) * np.diff(xs)
    cdf = np.concatenate([[0.0], np.cumsum(seg)])
    total = cdf[-1]
    if total <= 0:
        raise ValueError("cannot build CDF: zero-norm density")
    return cdf / total


def ks_distance_to_density(samples: np.ndarray, xs: np.ndarray, pdf: np.ndarray) -> float:
    """One-sample Kolmogorov-Smirnov distance against a gridded density."""
    cdf = cdf_on_grid(xs, pdf)
    s = np.sort(np.asarray(samples, dtype=float))
    n = len(s)
    f = np.interp(s, xs, cdf, left=0.0, right=1.0)
    up = np.max(np.arange(1, n + 1) / n - f)
    dn = np.max(f - np.arange(0, n) / n)
    return float(max(up, dn))


def ks_two_sample(a: np.ndarray, b: np.ndarray) -> float:
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    both = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, both, side="right") / len(a)
    cdf_b = np.searchsorted(b, both, side="right") / len(b)
    return float(np.max(np.abs(cdf_a - cdf_b)))


def invert_piecewise_linear_pdf(xs: np.ndarray, pdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF sampling treating the pdf as piecewise linear between nodes.

    u is uniform in [0,1); inversion solves the per-segment quadratic with the
    numerically stable root form."""
    xs = np.asarray(xs, dtype=float)
    pdf = np.clip(np.asarray(pdf, dtype=float), 0.0, None)
    cdf = cdf_on_grid(xs, pdf)
    norm = np.trapezoid(pdf, xs)
    p = pdf / norm
    u = np.asarray(u, dtype=float)
    seg = np.clip(np.searchsorted(cdf, u, side="right") - 1, 0, len(xs) - 2)
    du = u - cdf[seg]
    h = xs[seg + 1] - xs[seg]
    p0 = p[seg]
    slope = (p[seg + 1] - p0) / h
    a = 0.5 * slope
    b = p0
    disc = np.sqrt(np.maximum(b**2 + 4.0 * a * du, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = np.where(
            np.abs(a) > 1e-300 * np.abs(b),
            2.0 * du / np.maximum(b + disc, 1e-300),
            du / np.maximum(b, 1e-300),
        )
    xi = np.clip(xi, 0.0, h)
    return xs[seg] + xi
