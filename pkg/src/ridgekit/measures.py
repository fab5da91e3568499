"""Invariant-measure constants and Monte-Carlo checks of matrix integration identities.

Three changes of variables on the space of full-column-rank m-by-k matrices
are validated: polar decomposition W = U P^(1/2), the polar integration
identity relating frames to R^m, and SVD coordinates A = U D V^T.  Each
validator estimates both sides of the identity with independent Monte-Carlo
estimators on a Gaussian test integrand and reports a z-score; closed forms
(Siegel gamma, Stiefel volume) supply only the measure normalizations, never
the answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import multigammaln

__all__ = [
    "stiefel_volume",
    "polar_constant",
    "MeasureCheck",
    "mc_validate_polar",
    "mc_validate_polar_integration",
    "mc_validate_svd_measure",
]


def stiefel_volume(m: int, k: int) -> float:
    """Total invariant measure of the orthonormal k-frames in R^m:
    2^k pi^(mk/2) / Gamma_k(m/2), with Gamma_k the Siegel gamma function."""
    if k == 0:
        return 1.0
    return float(2.0 ** k * np.pi ** (m * k / 2.0) / np.exp(multigammaln(m / 2.0, k)))


def polar_constant(m: int, k: int) -> float:
    """Polar-integration normalizer c_{m,k} = vol(S^{k-1}) * vol(V_{m-1,k-1}).

    Splitting a k-frame into a distinguished direction (uniform on S^{m-1})
    and a (k-1)-frame in its orthocomplement gives the V_{m-1,k-1} factor;
    the Monte-Carlo validator below confirms this normalization.  (For k = 1
    it reduces to 2 either way.)
    """
    sphere = 2.0 * np.pi ** (k / 2.0) / math.gamma(k / 2.0)
    return sphere * stiefel_volume(m - 1, k - 1)


def polar_constant_printed(m: int, k: int) -> float:
    """Variant with a V_{m,k-1} frame factor, kept for report cross-checks."""
    sphere = 2.0 * np.pi ** (k / 2.0) / math.gamma(k / 2.0)
    return sphere * stiefel_volume(m, k - 1)


@dataclass(frozen=True)
class MeasureCheck:
    lhs: float
    rhs: float
    lhs_se: float
    rhs_se: float
    trials: int

    @property
    def z(self) -> float:
        return (self.lhs - self.rhs) / math.hypot(self.lhs_se, self.rhs_se)


def _mean_se(samples: np.ndarray):
    mean = float(np.mean(samples))
    se = float(np.std(samples, ddof=1) / math.sqrt(len(samples)))
    return mean, se


def _haar_frames(m: int, k: int, trials: int, rng) -> np.ndarray:
    """Batch of invariant-measure frames via sign-fixed QR of Gaussian matrices."""
    g = rng.standard_normal((trials, m, k))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diagonal(r, axis1=1, axis2=2))
    signs = np.where(signs == 0, 1.0, signs)
    return q * signs[:, None, :]


def _gaussian_matrix_lhs(m: int, k: int, trials: int, rng, scale: float = 1.3):
    """Importance-sampled int exp(-|W|_F^2 / 2) dW over all m-by-k matrices."""
    w = scale * rng.standard_normal((trials, m, k))
    q2 = np.sum(w * w, axis=(1, 2))
    log_w = -q2 / 2.0 + q2 / (2.0 * scale ** 2) + (m * k / 2.0) * math.log(2.0 * np.pi * scale ** 2)
    return _mean_se(np.exp(log_w))


def mc_validate_polar(m: int, k: int, trials: int = 100_000, seed: int = 0) -> MeasureCheck:
    """Polar-decomposition identity: int f dW = 2^-k int f(U P^(1/2)) |det P|^((m-k-1)/2) dP dU.

    The right side draws U from the invariant frame measure and P from a
    Wishart law with k+1 degrees of freedom (density exp(-tr P / 2) / Z0) and
    evaluates the Gaussian integrand literally on the assembled matrix.
    """
    rng = np.random.default_rng(seed)
    lhs, lhs_se = _gaussian_matrix_lhs(m, k, trials, rng)

    u = _haar_frames(m, k, trials, rng)
    y = rng.standard_normal((trials, k + 1, k))
    p = np.einsum("tij,til->tjl", y, y)
    evals, evecs = np.linalg.eigh(p)
    evals = np.maximum(evals, 0.0)
    proot = np.einsum("tij,tj,tlj->til", evecs, np.sqrt(evals), evecs)
    w = u @ proot
    f = np.exp(-np.sum(w * w, axis=(1, 2)) / 2.0)
    z0 = math.exp((k + 1) * k / 2.0 * math.log(2.0) + multigammaln((k + 1) / 2.0, k))
    weight = np.prod(evals, axis=1) ** ((m - k - 1) / 2.0) * z0 * np.exp(np.sum(evals, axis=1) / 2.0)
    rhs, rhs_se = _mean_se(f * weight * (2.0 ** (-k)) * stiefel_volume(m, k))
    return MeasureCheck(lhs, rhs, lhs_se, rhs_se, trials)


def mc_validate_polar_integration(m: int, k: int, trials: int = 100_000,
                                  seed: int = 0) -> MeasureCheck:
    """Polar-integration identity: c_{m,k} int f = int f(U b) |U b|^(m-k) dU db."""
    rng = np.random.default_rng(seed)
    scale = 1.3
    x = scale * rng.standard_normal((trials, m))
    q2 = np.sum(x * x, axis=1)
    log_w = -q2 / 2.0 + q2 / (2.0 * scale ** 2) + (m / 2.0) * math.log(2.0 * np.pi * scale ** 2)
    lhs, lhs_se = _mean_se(polar_constant(m, k) * np.exp(log_w))

    u = _haar_frames(m, k, trials, rng)
    b = scale * rng.standard_normal((trials, k))
    ub = np.einsum("tmk,tk->tm", u, b)
    r2 = np.sum(ub * ub, axis=1)
    qb = np.sum(b * b, axis=1)
    dens = np.exp(-qb / (2.0 * scale ** 2)) / (2.0 * np.pi * scale ** 2) ** (k / 2.0)
    vals = np.exp(-r2 / 2.0) * r2 ** ((m - k) / 2.0) / dens
    rhs, rhs_se = _mean_se(vals * stiefel_volume(m, k))
    return MeasureCheck(lhs, rhs, lhs_se, rhs_se, trials)


def mc_validate_svd_measure(m: int, k: int, trials: int = 100_000,
                            seed: int = 0) -> MeasureCheck:
    """SVD change of variables:
    int f dW = 2^-k int f(U D V^T) |det D|^(m-k) prod_{i<j}(d_i^2 - d_j^2) dD dV dU
    over descending positive singular values, V ranging over the orthogonal group.
    """
    rng = np.random.default_rng(seed)
    lhs, lhs_se = _gaussian_matrix_lhs(m, k, trials, rng)

    scale = 1.2
    u = _haar_frames(m, k, trials, rng)
    v = _haar_frames(k, k, trials, rng)
    d = np.sort(np.abs(scale * rng.standard_normal((trials, k))), axis=1)[:, ::-1]
    a = np.einsum("tmi,ti,tki->tmk", u, d, v)
    f = np.exp(-np.sum(a * a, axis=(1, 2)) / 2.0)
    # density of the descending-sorted absolute Gaussians
    half_norm = math.sqrt(2.0 / np.pi) / scale
    dens = math.factorial(k) * np.prod(half_norm * np.exp(-d * d / (2.0 * scale ** 2)), axis=1)
    vand = np.ones(trials)
    for i in range(k):
        for j in range(i + 1, k):
            vand *= d[:, i] ** 2 - d[:, j] ** 2
    vals = f * np.prod(d, axis=1) ** (m - k) * vand / dens
    rhs, rhs_se = _mean_se(vals * (2.0 ** (-k)) * stiefel_volume(m, k) * stiefel_volume(k, k))
    return MeasureCheck(lhs, rhs, lhs_se, rhs_se, trials)
