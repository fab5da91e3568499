"""Activation functions, Gaussian-derivative mollifiers, and ridgelet pairs.

An activation carries a pointwise evaluator together with its frequency-side
form where one exists in closed form away from omega = 0.  Step and ReLU are
tempered distributions: their frequency forms (1/(i*omega), -1/omega^2) are
only valid off the origin and are tagged so admissibility computations never
touch omega = 0 for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import hermite_e

__all__ = [
    "Activation",
    "Mollifier",
    "RidgeletPair",
    "gaussian_mollifier",
    "mollifier_activation",
    "get_activation",
    "BUILTIN_ACTIVATIONS",
]

SMOOTH = "smooth"
DISTRIBUTION = "tempered-distribution"


@dataclass(frozen=True)
class Activation:
    name: str
    kind: str  # "smooth" or "tempered-distribution"
    evaluate: Callable[[np.ndarray], np.ndarray]
    freq: Optional[Callable[[np.ndarray], np.ndarray]] = None
    # monomial coefficients p with sigma(z) = p(z) exp(-z^2/2), when of that form;
    # lets quadrature loops use the fused kernels
    gauss_poly: Optional[np.ndarray] = None

    def __call__(self, b):
        return self.evaluate(b)


@dataclass(frozen=True)
class Mollifier:
    """Gaussian-derivative mollifier with matching space/frequency evaluators.

    ``order`` is the vanishing-moment order: the frequency form
    (i*omega)^order * exp(-omega^2/2) has a zero of exactly that order at 0.
    """

    order: int
    evaluate: Callable[[np.ndarray], np.ndarray]
    freq: Callable[[np.ndarray], np.ndarray]
    gauss_poly: Optional[np.ndarray] = None

    def __call__(self, b):
        return self.evaluate(b)


def gaussian_mollifier(order: int) -> Mollifier:
    """order-th derivative of the unit Gaussian density.

    Space side: d^n/db^n [exp(-b^2/2)/sqrt(2*pi)], written with probabilists'
    Hermite polynomials.  Frequency side: (i*omega)^n exp(-omega^2/2).
    """
    if order < 0:
        raise ValueError("mollifier order must be >= 0")
    coeffs = np.zeros(order + 1)
    coeffs[order] = 1.0
    mono = ((-1.0) ** order) * hermite_e.herme2poly(coeffs) / np.sqrt(2.0 * np.pi)

    def rho(b, _c=coeffs, _n=order):
        b = np.asarray(b, dtype=float)
        return ((-1.0) ** _n) * hermite_e.hermeval(b, _c) * np.exp(-b * b / 2.0) / np.sqrt(2.0 * np.pi)

    def rho_sharp(w, _n=order):
        w = np.asarray(w, dtype=complex)
        return (1j * w) ** _n * np.exp(-w * w / 2.0)

    return Mollifier(order, rho, rho_sharp, np.asarray(mono, dtype=float))


def mollifier_activation(order: int) -> Activation:
    """The same Gaussian-derivative function used on the activation side."""
    m = gaussian_mollifier(order)
    return Activation(f"gaussderiv{order}", SMOOTH, m.evaluate, m.freq, m.gauss_poly)


def _gauss(b):
    b = np.asarray(b, dtype=float)
    return np.exp(-b * b / 2.0) / np.sqrt(2.0 * np.pi)


def _gauss_sharp(w):
    w = np.asarray(w, dtype=complex)
    return np.exp(-w * w / 2.0)


def _relu(b):
    b = np.asarray(b, dtype=float)
    return np.maximum(b, 0.0)


def _relu_sharp(w):
    # valid away from omega = 0 only
    w = np.asarray(w, dtype=complex)
    return -1.0 / (w * w)


def _step(b):
    b = np.asarray(b, dtype=float)
    return (b >= 0).astype(float)


def _step_sharp(w):
    # valid away from omega = 0 only
    w = np.asarray(w, dtype=complex)
    return 1.0 / (1j * w)


def _tanh(b):
    return np.tanh(np.asarray(b, dtype=float))


def _tanh_sharp(w):
    # principal value transform of tanh; valid away from omega = 0
    w = np.asarray(w, dtype=complex)
    return -1j * np.pi / np.sinh(np.pi * w / 2.0)


BUILTIN_ACTIVATIONS = {
    "gauss": Activation("gauss", SMOOTH, _gauss, _gauss_sharp,
                        np.array([1.0 / np.sqrt(2.0 * np.pi)])),
    "relu": Activation("relu", DISTRIBUTION, _relu, _relu_sharp),
    "step": Activation("step", DISTRIBUTION, _step, _step_sharp),
    "tanh": Activation("tanh", DISTRIBUTION, _tanh, _tanh_sharp),
}


def get_activation(name: str) -> Activation:
    if name in BUILTIN_ACTIVATIONS:
        return BUILTIN_ACTIVATIONS[name]
    if name.startswith("gaussderiv"):
        return mollifier_activation(int(name[len("gaussderiv"):]))
    raise ValueError(f"unknown activation {name!r}")


@dataclass(frozen=True)
class RidgeletPair:
    """Activation sigma paired with a mollifier rho."""

    sigma: Activation
    rho: Mollifier

    def check_decay(self, b_lo: float, b_hi: float, tol: float = 1e-12) -> bool:
        """True when rho has decayed below ``tol`` at both interval ends."""
        ends = np.abs(self.rho(np.array([b_lo, b_hi])))
        return bool(np.all(ends <= tol))
