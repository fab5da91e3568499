"""Numerical network/ridgelet transform pairs with machine-verified reconstruction.

Subpackages cover five settings: grids on R^m (euclidean), exact finite-field
sums (finite_field), cyclic group convolution (gconv), the hyperbolic disk
(disk), and d-plane/pooling layers (dplane), on top of a shared numerical
substrate (grids, linalg, activations, measures).
"""

__version__ = "0.1.0"
