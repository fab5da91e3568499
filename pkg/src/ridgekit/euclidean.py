"""Depth-2 network quadrature and ridgelet transform on R^m.

The network integral

    S[gamma](x) = int gamma(a, b) sigma(a.x - b) da db

and the ridgelet transform

    R[f; rho](a, b) = int f(x) conj(rho(a.x - b)) dx

are evaluated by midpoint quadrature on finite parameter boxes.  The
reconstruction constant convention is the one produced by the frequency-side
derivation: <<sigma, rho>> = (2*pi)^(m-1) * int sigma#(w) conj(rho#(w)) |w|^-m dw.
Every reconstruction also fits the constant empirically and reports both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import poly_gauss_network, poly_gauss_ridge
from .activations import DISTRIBUTION, RidgeletPair
from .exceptions import InadmissibleConfigurationError, InadmissiblePairError
from .grids import GridFunction, eval_dft_at

__all__ = [
    "ParamGrid",
    "param_grid",
    "ridgelet",
    "slice_ridgelet",
    "network",
    "network_at",
    "admissibility",
    "Admissibility",
    "reconstruct",
    "ReconstructionResult",
    "point_mass",
    "polar_view",
]

_CHUNK_ELEMS = 2 ** 23  # cap on transient (a, b, x) kernel blocks


@dataclass
class ParamGrid:
    """Samples of gamma(a, b) on a product of midpoint grids.

    ``a_axes`` holds one node array per weight coordinate; ``values`` has
    shape ``(*a_dims, nb)`` once filled.  ``boundary_ratio`` records
    max |gamma| on the parameter-box boundary relative to its global max,
    the truncation diagnostic attached to every transform result.
    """

    a_axes: tuple
    b_nodes: np.ndarray
    values: np.ndarray = None
    truncation_warning: bool = False
    boundary_ratio: float = 0.0

    @property
    def m(self) -> int:
        return len(self.a_axes)

    @property
    def a_dims(self) -> tuple:
        return tuple(len(ax) for ax in self.a_axes)

    def a_points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.a_axes, indexing="ij")
        return np.stack([c.ravel() for c in mesh], axis=-1)

    @property
    def a_cell(self) -> float:
        return math.prod(ax[1] - ax[0] if len(ax) > 1 else 1.0 for ax in self.a_axes)

    @property
    def b_cell(self) -> float:
        b = self.b_nodes
        return float(b[1] - b[0]) if len(b) > 1 else 1.0

    def empty_like(self) -> "ParamGrid":
        return ParamGrid(self.a_axes, self.b_nodes)


def _midpoints(lo: float, hi: float, n: int) -> np.ndarray:
    h = (hi - lo) / n
    return lo + h * (np.arange(n) + 0.5)


def param_grid(m: int, a_max: float, na: int, b_max: float, nb: int) -> ParamGrid:
    """Symmetric midpoint boxes [-a_max, a_max]^m x [-b_max, b_max]."""
    axes = tuple(_midpoints(-a_max, a_max, na) for _ in range(m))
    return ParamGrid(axes, _midpoints(-b_max, b_max, nb))


def _boundary_ratio(values: np.ndarray) -> float:
    peak = np.max(np.abs(values))
    if peak == 0.0:
        return 0.0
    edge = 0.0
    for axis in range(values.ndim):
        sl = [slice(None)] * values.ndim
        for end in (0, -1):
            sl[axis] = end
            edge = max(edge, float(np.max(np.abs(values[tuple(sl)]))))
    return edge / peak


def ridgelet(f: GridFunction, pair: RidgeletPair, pg: ParamGrid) -> ParamGrid:
    """Direct-quadrature ridgelet transform of a grid function.

    Flags ``truncation_warning`` when the bias range does not cover the
    reachable values of a.x over the two boxes.
    """
    if pg.m != f.ndim:
        raise ValueError("parameter grid dimension must match the input grid")
    x = f.points()
    w = f.values.ravel() * f.cell_volume
    a = pg.a_points()
    b = pg.b_nodes
    t = a @ x.T
    if pair.rho.gauss_poly is not None:
        # real profile, so the conjugate is the profile itself
        out = poly_gauss_ridge(t, b, w, pair.rho.gauss_poly)
    else:
        out = np.empty((a.shape[0], len(b)), dtype=complex)
        step = max(1, _CHUNK_ELEMS // (len(b) * x.shape[0]))
        for lo in range(0, a.shape[0], step):
            block = t[lo:lo + step]
            kernel = np.conj(pair.rho(block[:, None, :] - b[None, :, None]))
            out[lo:lo + block.shape[0]] = kernel @ w
    result = ParamGrid(pg.a_axes, pg.b_nodes, out.reshape(*pg.a_dims, len(b)))
    reach = float(np.max(np.abs(t)))
    result.truncation_warning = reach > max(abs(b[0]), abs(b[-1]))
    result.boundary_ratio = _boundary_ratio(result.values)
    return result


def slice_ridgelet(f: GridFunction, pair: RidgeletPair, pg: ParamGrid,
                   omega_max: float = 10.0, n_omega: int = 512) -> ParamGrid:
    """Frequency-side ridgelet: gamma#(a, w) = fhat(w a) conj(rho#(w)).

    Independent of the direct path: evaluates the transform of f along rays
    through the origin and inverts in the bias variable by quadrature.
    """
    omega = _midpoints(-omega_max, omega_max, n_omega)
    dw = omega[1] - omega[0]
    rbar = np.conj(pair.rho.freq(omega))
    a = pg.a_points()
    b = pg.b_nodes
    phase = np.exp(1j * np.outer(b, omega))  # (nb, nw)
    out = np.empty((a.shape[0], len(b)), dtype=complex)
    for i in range(a.shape[0]):
        fhat = eval_dft_at(f, omega[:, None] * a[i][None, :])
        out[i] = phase @ (fhat * rbar) * dw / (2.0 * np.pi)
    result = ParamGrid(pg.a_axes, pg.b_nodes, out.reshape(*pg.a_dims, len(b)))
    result.boundary_ratio = _boundary_ratio(result.values)
    return result


def network_at(gamma: ParamGrid, sigma, points: np.ndarray) -> np.ndarray:
    """Evaluate S[gamma] at arbitrary points (n, m) by parameter quadrature."""
    if gamma.values is None:
        raise ValueError("parameter grid carries no values")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    a = gamma.a_points()
    b = gamma.b_nodes
    weights = gamma.values.reshape(a.shape[0], len(b)) * (gamma.a_cell * gamma.b_cell)
    t = a @ points.T  # (na, nx)
    if getattr(sigma, "gauss_poly", None) is not None:
        return poly_gauss_network(t, b, weights, sigma.gauss_poly)
    out = np.zeros(points.shape[0], dtype=complex)
    step = max(1, _CHUNK_ELEMS // (len(b) * points.shape[0]))
    for lo in range(0, a.shape[0], step):
        kernel = sigma(t[lo:lo + step][:, None, :] - b[None, :, None])
        out += np.einsum("ab,abx->x", weights[lo:lo + kernel.shape[0]], kernel)
    return out


def network(gamma: ParamGrid, sigma, geom: GridFunction) -> GridFunction:
    """S[gamma] sampled on the geometry of ``geom``."""
    vals = network_at(gamma, sigma, geom.points())
    return geom.with_values(vals.reshape(geom.dims))


@dataclass(frozen=True)
class Admissibility:
    value: complex
    scale: float          # integral of |integrand|, for the near-zero test
    moment_order: int
    required_order: int

    @property
    def inadmissible(self) -> bool:
        return abs(self.value) <= 1e-8 * max(self.scale, 1e-300)


def admissibility(pair: RidgeletPair, m: int, omega_max: float = 16.0,
                  n_omega: int = 8192) -> Admissibility:
    """Frequency-quadrature constant (2*pi)^(m-1) int sigma# conj(rho#) |w|^-m dw.

    Smooth activations need rho vanishing-moment order >= m for a regular
    integrand; distributional activations (step, ReLU, tanh) need >= m + 2
    and their frequency forms are only ever evaluated away from w = 0
    (midpoint nodes are symmetric and never hit the origin).
    """
    required = m + 2 if pair.sigma.kind == DISTRIBUTION else m
    if pair.rho.order < required:
        raise InadmissibleConfigurationError(
            f"rho order {pair.rho.order} < required {required} for sigma={pair.sigma.name!r}, m={m}")
    if pair.sigma.freq is None:
        raise InadmissibleConfigurationError(
            f"activation {pair.sigma.name!r} has no frequency form; "
            "use the empirical constant instead")
    omega = _midpoints(-omega_max, omega_max, n_omega)
    dw = omega[1] - omega[0]
    integrand = pair.sigma.freq(omega) * np.conj(pair.rho.freq(omega)) * np.abs(omega) ** (-m)
    pref = (2.0 * np.pi) ** (m - 1)
    value = complex(pref * np.sum(integrand) * dw)
    scale = float(pref * np.sum(np.abs(integrand)) * dw)
    return Admissibility(value, scale, pair.rho.order, required)


@dataclass
class ReconstructionResult:
    approx: GridFunction
    c: complex
    residual: float
    gamma: ParamGrid
    admissibility: Admissibility
    warnings: list = field(default_factory=list)

    @property
    def constant_ratio(self) -> float:
        """|empirical / quadrature| deviation from 1."""
        cq = self.admissibility.value
        return abs(self.c / cq - 1.0) if cq != 0 else float("inf")


def fit_constant(g: np.ndarray, f: np.ndarray):
    """Least-squares c for g ~ c*f plus the relative L2 residual of the fit."""
    fn2 = np.vdot(f, f).real
    if fn2 == 0.0:
        return 0.0 + 0.0j, float(np.linalg.norm(g))
    c = complex(np.vdot(f, g) / fn2)
    if c == 0:
        return c, float(np.linalg.norm(g) / np.sqrt(fn2))
    resid = float(np.linalg.norm(g - c * f) / (abs(c) * np.sqrt(fn2)))
    return c, resid


def reconstruct(f: GridFunction, pair: RidgeletPair, pg: ParamGrid,
                eval_geom: GridFunction = None) -> ReconstructionResult:
    """Compose S[R[f; rho]] and compare against f by a fitted constant."""
    adm = admissibility(pair, f.ndim)
    if adm.inadmissible:
        raise InadmissiblePairError(
            f"pair ({pair.sigma.name}, order-{pair.rho.order} mollifier) has vanishing "
            f"constant at m={f.ndim} (parity or cancellation)")
    gamma = ridgelet(f, pair, pg)
    geom = eval_geom if eval_geom is not None else f
    approx = network(gamma, pair.sigma, geom)
    c, residual = fit_constant(approx.values.ravel(), geom.values.ravel())
    warnings = []
    if gamma.truncation_warning:
        warnings.append("b-range-truncation")
    if gamma.boundary_ratio > 1e-6:
        warnings.append("parameter-box-truncation")
    return ReconstructionResult(approx, c, residual, gamma, adm, warnings)


def point_mass(pg: ParamGrid, a0, b0) -> ParamGrid:
    """One-node representation of a unit point mass at (a0, b0)."""
    a0 = np.atleast_1d(np.asarray(a0, dtype=float))
    values = np.zeros((*pg.a_dims, len(pg.b_nodes)), dtype=complex)
    idx = tuple(int(np.argmin(np.abs(ax - a0[i]))) for i, ax in enumerate(pg.a_axes))
    jb = int(np.argmin(np.abs(pg.b_nodes - b0)))
    values[(*idx, jb)] = 1.0 / (pg.a_cell * pg.b_cell)
    return ParamGrid(pg.a_axes, pg.b_nodes, values)


def polar_view(pg: ParamGrid):
    """Read-only polar coordinates (r, u) of the weight nodes, for diagnostics."""
    a = pg.a_points()
    r = np.linalg.norm(a, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.where(r[:, None] > 0, a / np.where(r[:, None] == 0, 1.0, r[:, None]), 0.0)
    return r, u
