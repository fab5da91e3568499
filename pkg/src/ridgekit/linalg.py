"""Small-matrix SVD, orthonormal-frame sampling, and frame completion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateMatrixError

__all__ = ["SVDFactors", "svd_small", "sample_stiefel", "complete_frame"]


@dataclass(frozen=True)
class SVDFactors:
    """Thin SVD ``A = U diag(D) V^T`` with descending positive singular values."""

    u: np.ndarray
    d: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.u @ np.diag(self.d) @ self.v.T


def svd_small(a: np.ndarray) -> SVDFactors:
    """Factor a full-column-rank m-by-k matrix (m >= k).

    Raises DegenerateMatrixError when the smallest singular value is below
    1e-12 of the largest.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < a.shape[1]:
        raise ValueError("expected an m-by-k matrix with m >= k")
    u, d, vt = np.linalg.svd(a, full_matrices=False)
    if d[-1] < 1e-12 * d[0]:
        raise DegenerateMatrixError(f"rank-deficient input: singular values {d}")
    return SVDFactors(u, d, vt.T)


def sample_stiefel(m: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an orthonormal m-by-k frame from the rotation-invariant measure.

    Orthonormalizes a standard Gaussian matrix by QR; the sign of each R
    diagonal entry is folded into the corresponding Q column, which makes
    the draw exactly invariant under left rotation.
    """
    if not (m >= k >= 1):
        raise ValueError("need m >= k >= 1")
    g = rng.standard_normal((m, k))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diagonal(r))
    signs[signs == 0] = 1.0
    return q * signs


def complete_frame(u: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal completion of an m-by-k frame to the full space.

    Returns an m-by-(m-k) frame spanning the orthogonal complement, computed
    by orthonormalizing the identity columns against ``u`` (QR of [u | I]).
    """
    u = np.asarray(u, dtype=float)
    m, k = u.shape
    if k == m:
        return np.zeros((m, 0))
    q, _ = np.linalg.qr(np.hstack([u, np.eye(m)]))
    w = q[:, k:m]
    # fix column signs for reproducibility across LAPACK builds
    lead = w[np.argmax(np.abs(w), axis=0), np.arange(w.shape[1])]
    return w * np.sign(np.where(lead == 0, 1.0, lead))
