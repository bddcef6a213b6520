"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: numerical failures exit 1, usage
problems exit 2, file/format problems exit 3.
"""


class IsoopsError(Exception):
    """Base class for package-specific failures."""


class NumericalError(IsoopsError):
    """A computation could not be completed for numerical/geometric reasons."""


class GapTooLarge(NumericalError):
    """An angular gap of at least pi/2 degenerates the circumscribed polygon."""


class TooFewDirections(IsoopsError, ValueError):
    """Fewer directions than the weight construction supports."""


class RankDeficient(NumericalError):
    """The stacked Veronese system admits no weight vector.

    Carries the achieved rank of the augmented image-point matrix.
    """

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class StabilityViolation(NumericalError):
    """Requested diffusion time step exceeds the explicit-scheme bound."""


class SingularMode(NumericalError):
    """A cyclic tridiagonal system has a zero eigenvalue for some Fourier mode."""


class BoundaryVertex(IsoopsError):
    """Curvature was requested at a vertex whose 1-ring is not a closed cycle."""


class DegenerateProjection(NumericalError):
    """A ring edge projects to (numerically) zero length in the tangent plane."""


class PairingRefused(NumericalError):
    """Scattered neighbors could not be paired into near-antipodal spokes."""


class FormatError(IsoopsError):
    """A file did not conform to the documented subset of its format."""
