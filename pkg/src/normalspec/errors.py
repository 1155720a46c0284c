"""Exception hierarchy for normalspec.

Every error raised on purpose by the library derives from
:class:`NormalSpecError`, so callers can catch the whole family at once.
"""

__all__ = ['NormalSpecError', 'ArgumentError', 'NonUnitVector', 'NotUnitary',
           'LevelOutOfRange', 'DimensionTooLarge', 'ShapeMismatch', 'ConstantPolynomial',
           'NotMonic', 'SampleTooCloseToRoot', 'NoConvergence', 'DegenerateSpectrum',
           'MultipleRoots', 'NotSolvable', 'PoleHit', 'BreakdownBeforeCompletion',
           'NotIsometry', 'SizeExceeded', 'CombinatorialBound', 'LengthMismatch',
           'NotMajorized', 'AlreadyFull', 'NotCentered', 'InvalidDescriptor',
           'MultipleRootsInQ']


class NormalSpecError(Exception):
    """Base class for all library errors."""


class ArgumentError(NormalSpecError, ValueError):
    """Raised when an input violates a documented precondition."""


class NonUnitVector(ArgumentError):
    pass


class NotUnitary(ArgumentError):
    pass


class LevelOutOfRange(ArgumentError):
    pass


class DimensionTooLarge(ArgumentError):
    pass


class ShapeMismatch(ArgumentError):
    pass


class ConstantPolynomial(ArgumentError):
    pass


class NotMonic(ArgumentError):
    pass


class SampleTooCloseToRoot(ArgumentError):
    pass


class NoConvergence(NormalSpecError):
    """Raised when an iteration hits its sweep cap without converging."""


class DegenerateSpectrum(ArgumentError):
    """Coincident eigenvalues where a simple spectrum is required."""


class MultipleRoots(DegenerateSpectrum):
    pass


class NotSolvable(NormalSpecError):
    """The two-spectra inverse problem has no normal solution.

    ``index`` is the 0-based position of the first residue that is not a
    nonnegative real; ``value`` is that residue.
    """

    def __init__(self, msg, index, value):
        super().__init__(msg)
        self.index = index
        self.value = value


class PoleHit(ArgumentError):
    pass


class BreakdownBeforeCompletion(NormalSpecError):
    """Arnoldi produced a vanishing subdiagonal before spanning the space."""

    def __init__(self, msg, step):
        super().__init__(msg)
        self.step = step


class NotIsometry(ArgumentError):
    pass


class SizeExceeded(ArgumentError):
    pass


class CombinatorialBound(ArgumentError):
    pass


class LengthMismatch(ArgumentError):
    pass


class NotMajorized(ArgumentError):
    pass


class AlreadyFull(ArgumentError):
    pass


class NotCentered(ArgumentError):
    pass


class InvalidDescriptor(ArgumentError):
    pass


class MultipleRootsInQ(MultipleRoots):
    """The fixed polynomial Q has a repeated root."""
