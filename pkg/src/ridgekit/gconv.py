"""Shift-equivariant convolution networks on the cyclic group Z_n.

The group acts on R^n by cyclic shifts; filters live in an m-dimensional
subspace spanned by an orthonormal frame.  Because the feature map only sees
the input through the inner products <shift_{g^-1} x, a>, the network
quadrature reduces to the Euclidean one evaluated at projected shift
coordinates, and the ridgelet transform over the filter subspace reduces to
the Euclidean transform in frame coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import euclidean
from .activations import RidgeletPair
from .exceptions import InadmissiblePairError
from .grids import GridFunction

__all__ = [
    "cyclic_shift",
    "gconvolve",
    "FilterSubspace",
    "standard_subspace",
    "project_shifts",
    "EquivariantTarget",
    "ridge_target",
    "check_equivariance",
    "gconv_network",
    "gconv_ridgelet",
    "gconv_reconstruct",
]


def cyclic_shift(x: np.ndarray, g: int) -> np.ndarray:
    """Action of group element g: (T_g x)(i) = x(i - g mod n)."""
    return np.roll(np.asarray(x), g)


def gconvolve(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(a * x)(g) = <shift_{g^-1} x, a> for all g in Z_n."""
    a = np.asarray(a)
    x = np.asarray(x)
    if a.shape != x.shape:
        raise ValueError("filter and signal must share the group order n")
    n = len(a)
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return x[idx] @ a


@dataclass(frozen=True)
class FilterSubspace:
    """m-dimensional filter subspace of R^n spanned by orthonormal columns."""

    n: int
    frame: np.ndarray  # (n, m)

    def __post_init__(self):
        frame = np.asarray(self.frame, dtype=float)
        if frame.shape[0] != self.n:
            raise ValueError("frame rows must equal the group order n")
        gram = frame.T @ frame
        if not np.allclose(gram, np.eye(frame.shape[1]), atol=1e-12):
            raise ValueError("frame columns must be orthonormal within 1e-12")
        object.__setattr__(self, "frame", frame)

    @property
    def m(self) -> int:
        return self.frame.shape[1]

    def embed(self, coords: np.ndarray) -> np.ndarray:
        """Map subspace coordinates to a signal in R^n."""
        return np.asarray(coords, dtype=float) @ self.frame.T

    def project(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.frame


def standard_subspace(n: int, m: int) -> FilterSubspace:
    """Span of the first m standard basis vectors."""
    return FilterSubspace(n, np.eye(n)[:, :m])


def project_shifts(x: np.ndarray, sub: FilterSubspace) -> np.ndarray:
    """Row g holds the subspace coordinates of shift_{g^-1} x.

    With these rows P, a filter a = embed(c) satisfies (a * x)(g) = P[g].c,
    so network evaluation is a Euclidean quadrature at the rows of P.
    """
    x = np.asarray(x, dtype=float)
    n = sub.n
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return x[idx] @ sub.frame


@dataclass(frozen=True)
class EquivariantTarget:
    """Map f : R^n -> C^G with a declared shift-equivariance flag."""

    evaluate: Callable[[np.ndarray], np.ndarray]
    equivariant: bool = True

    def __call__(self, x):
        return self.evaluate(x)


def ridge_target(sub: FilterSubspace, w_coords: Sequence[np.ndarray],
                 phis: Sequence[Callable]) -> EquivariantTarget:
    """Equivariant target f(x)(g) = prod_i phi_i((w_i * x)(g)) with w_i in the subspace.

    A product of filter responses keeps the slot-e restriction square
    integrable over the subspace once the w_i span it.
    """
    ws = [np.asarray(w, dtype=float) for w in w_coords]

    def evaluate(x):
        p = project_shifts(x, sub)
        out = np.ones(sub.n, dtype=complex)
        for w, phi in zip(ws, phis):
            out = out * phi(p @ w)
        return out

    return EquivariantTarget(evaluate, True)


def check_equivariance(f: EquivariantTarget, signals: Sequence[np.ndarray]) -> float:
    """Max deviation of f(T_g x)(h) from f(x)(g^-1 h) over all g, h and signals."""
    worst = 0.0
    for x in signals:
        n = len(x)
        base = f.evaluate(np.asarray(x, dtype=float))
        for g in range(n):
            shifted = f.evaluate(cyclic_shift(x, g))
            expected = np.roll(base, g)  # slot h of the shifted input is slot h-g of base
            worst = max(worst, float(np.max(np.abs(shifted - expected))))
    return worst


def gconv_network(gamma: euclidean.ParamGrid, sigma, sub: FilterSubspace,
                  x: np.ndarray) -> np.ndarray:
    """S[gamma](x)(g) over all g; exact shift equivariance holds by construction."""
    return euclidean.network_at(gamma, sigma, project_shifts(x, sub))


def gconv_ridgelet(f: EquivariantTarget, pair: RidgeletPair, sub: FilterSubspace,
                   x_grid: GridFunction, pg: euclidean.ParamGrid) -> euclidean.ParamGrid:
    """Ridgelet transform of the slot-e restriction of f over the filter subspace.

    ``x_grid`` fixes the quadrature box in subspace coordinates; its values
    are ignored and replaced by f(embed(c))(e).
    """
    pts = x_grid.points()
    fe = np.array([f.evaluate(sub.embed(c))[0] for c in pts], dtype=complex)
    fgrid = x_grid.with_values(fe.reshape(x_grid.dims))
    return euclidean.ridgelet(fgrid, pair, pg)


@dataclass
class GconvReconstruction:
    c: complex
    residual: float
    gamma: euclidean.ParamGrid
    admissibility: euclidean.Admissibility
    predictions: np.ndarray
    targets: np.ndarray
    equivariance_defect: float


def gconv_reconstruct(f: EquivariantTarget, pair: RidgeletPair, sub: FilterSubspace,
                      x_grid: GridFunction, pg: euclidean.ParamGrid,
                      test_signals: Sequence[np.ndarray]) -> GconvReconstruction:
    """Verify S[R[f; rho]] ~ c f on test signals, across every group slot.

    The equivariance flag of f is re-verified on the test signals before the
    transform is trusted.
    """
    defect = check_equivariance(f, test_signals)
    if f.equivariant and defect > 1e-9:
        raise ValueError(f"target declared equivariant but deviates by {defect:.3e}")
    adm = euclidean.admissibility(pair, sub.m)
    if adm.inadmissible:
        raise InadmissiblePairError(
            f"vanishing constant for ({pair.sigma.name}, order {pair.rho.order}) at m={sub.m}")
    gamma = gconv_ridgelet(f, pair, sub, x_grid, pg)
    preds, targets = [], []
    for x in test_signals:
        preds.append(gconv_network(gamma, pair.sigma, sub, x))
        targets.append(np.asarray(f.evaluate(x), dtype=complex))
    preds = np.concatenate(preds)
    targets = np.concatenate(targets)
    c, residual = euclidean.fit_constant(preds, targets)
    return GconvReconstruction(c, residual, gamma, adm, preds, targets, defect)
