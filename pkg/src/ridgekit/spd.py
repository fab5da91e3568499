"""Composite distance on the manifold of symmetric positive definite matrices.

The horosphere-distance vector of an SPD point x against an orthogonal
boundary parameter u is half the log of the diagonal scaling in the
unit-upper-triangular factorization u^T x u = nu diag(lam) nu^T.
"""

from __future__ import annotations

import numpy as np

__all__ = ["spd_composite_distance", "udu_factorization"]


def udu_factorization(a: np.ndarray):
    """Factor an SPD matrix as nu diag(lam) nu^T with nu unit upper triangular.

    Computed by reversing the row/column order, taking a Cholesky factor, and
    reversing back.
    """
    a = np.asarray(a, dtype=float)
    k = a.shape[0]
    rev = a[::-1, ::-1]
    try:
        low = np.linalg.cholesky(rev)
    except np.linalg.LinAlgError as exc:
        raise ValueError("matrix is not symmetric positive definite") from exc
    diag = np.diagonal(low).copy()
    unit = low / diag[None, :]
    nu = unit[::-1, ::-1]
    lam = (diag ** 2)[::-1]
    return nu, lam


def spd_composite_distance(x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Vector-valued horosphere distance: 0.5 * log(lam) of u^T x u.

    ``x`` must be SPD; ``u`` orthogonal within 1e-10.
    """
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    if x.shape != u.shape or x.shape[0] != x.shape[1]:
        raise ValueError("x and u must be square matrices of the same size")
    if not np.allclose(x, x.T, atol=1e-10):
        raise ValueError("x must be symmetric")
    if not np.allclose(u.T @ u, np.eye(u.shape[0]), atol=1e-10):
        raise ValueError("u must be orthogonal within 1e-10")
    _, lam = udu_factorization(u.T @ x @ u)
    return 0.5 * np.log(lam)
