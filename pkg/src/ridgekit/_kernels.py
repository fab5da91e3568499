"""Fused quadrature kernels for polynomial-times-Gaussian profiles.

Both the built-in Gaussian activation and every Gaussian-derivative mollifier
have the form poly(z) * exp(-z^2 / 2); the compiled kernels below evaluate
the two quadrature contractions that dominate runtime without materializing
the (node, bias, point) tensor.  Summation order is fixed, so results are
deterministic regardless of thread counts; a pure-numpy fallback with the
same reduction structure is used when numba is unavailable.

Terms with z^2 > 200 are skipped: the factor exp(-100) bounds them below
1e-37 of the profile scale, far under every tolerance in the package.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a soft dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return wrap

__all__ = ["poly_gauss_ridge", "poly_gauss_network", "HAVE_NUMBA"]

_CUT = 200.0


@njit
def _ridge_loop(t, b, w_re, w_im, coeffs, out):
    na, nx = t.shape
    nb = b.shape[0]
    nc = coeffs.shape[0]
    for i in range(na):
        for j in range(nb):
            sre = 0.0
            sim = 0.0
            for l in range(nx):
                z = t[i, l] - b[j]
                z2 = z * z
                if z2 > _CUT:
                    continue
                p = coeffs[nc - 1]
                for ci in range(nc - 2, -1, -1):
                    p = p * z + coeffs[ci]
                v = p * math.exp(-0.5 * z2)
                sre += w_re[l] * v
                sim += w_im[l] * v
            out[i, j] = complex(sre, sim)


@njit
def _network_loop(t, b, g_re, g_im, coeffs, out_re, out_im):
    na, nx = t.shape
    nb = b.shape[0]
    nc = coeffs.shape[0]
    for i in range(na):
        for j in range(nb):
            gre = g_re[i, j]
            gim = g_im[i, j]
            if gre == 0.0 and gim == 0.0:
                continue
            for l in range(nx):
                z = t[i, l] - b[j]
                z2 = z * z
                if z2 > _CUT:
                    continue
                p = coeffs[nc - 1]
                for ci in range(nc - 2, -1, -1):
                    p = p * z + coeffs[ci]
                v = p * math.exp(-0.5 * z2)
                out_re[l] += gre * v
                out_im[l] += gim * v


def _profile_numpy(z: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    p = np.full(z.shape, coeffs[-1])
    for c in coeffs[-2::-1]:
        p *= z
        p += c
    z2 = z * z
    out = p * np.exp(-0.5 * np.minimum(z2, _CUT))
    out[z2 > _CUT] = 0.0
    return out


def poly_gauss_ridge(t: np.ndarray, b: np.ndarray, weights: np.ndarray,
                     coeffs: np.ndarray) -> np.ndarray:
    """out[i, j] = sum_l weights[l] * profile(t[i, l] - b[j])."""
    t = np.ascontiguousarray(t, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    coeffs = np.ascontiguousarray(coeffs, dtype=float)
    w = np.ascontiguousarray(weights, dtype=complex)
    if HAVE_NUMBA:
        out = np.empty((t.shape[0], len(b)), dtype=complex)
        _ridge_loop(t, b, w.real.copy(), w.imag.copy(), coeffs, out)
        return out
    out = np.empty((t.shape[0], len(b)), dtype=complex)
    step = max(1, 2 ** 22 // (len(b) * t.shape[1]))
    for lo in range(0, t.shape[0], step):
        kern = _profile_numpy(t[lo:lo + step][:, None, :] - b[None, :, None], coeffs)
        out[lo:lo + kern.shape[0]] = kern @ w
    return out


def poly_gauss_network(t: np.ndarray, b: np.ndarray, gamma: np.ndarray,
                       coeffs: np.ndarray) -> np.ndarray:
    """out[l] = sum_{i,j} gamma[i, j] * profile(t[i, l] - b[j])."""
    t = np.ascontiguousarray(t, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    coeffs = np.ascontiguousarray(coeffs, dtype=float)
    g = np.ascontiguousarray(gamma, dtype=complex)
    if HAVE_NUMBA:
        out_re = np.zeros(t.shape[1])
        out_im = np.zeros(t.shape[1])
        _network_loop(t, b, g.real.copy(), g.imag.copy(), coeffs, out_re, out_im)
        return out_re + 1j * out_im
    out = np.zeros(t.shape[1], dtype=complex)
    step = max(1, 2 ** 22 // (len(b) * t.shape[1]))
    for lo in range(0, t.shape[0], step):
        kern = _profile_numpy(t[lo:lo + step][:, None, :] - b[None, :, None], coeffs)
        out += np.einsum("ab,abx->x", g[lo:lo + kern.shape[0]], kern)
    return out
