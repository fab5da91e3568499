"""Exception types shared across the toolkit."""


class RidgekitError(Exception):
    """Base class for all toolkit-specific errors."""


class DegenerateMatrixError(RidgekitError):
    """Raised when a matrix factorization meets a (numerically) rank-deficient input."""


class DegenerateWeightError(RidgekitError):
    """Raised when a singular-value Jacobian weight is evaluated on tied or zero values."""


class InadmissiblePairError(RidgekitError):
    """Raised when an activation/mollifier pair has a vanishing reconstruction constant."""


class InadmissibleConfigurationError(RidgekitError):
    """Raised when a mollifier lacks the vanishing moments a transform requires."""


class UnderResolvedError(RidgekitError):
    """Raised when a direction set is too sparse to support a stable inversion."""
