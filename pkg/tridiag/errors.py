"""Exception hierarchy for the tridiagonal spectral toolkit."""


class TridiagError(Exception):
    """Root of every error raised by the library."""


# =============================================================================
# INPUT ERRORS (CLI exit code 2)
# =============================================================================

class InputError(TridiagError, ValueError):
    """Malformed or unsupported input."""


class LengthMismatch(InputError):
    pass


class ZeroOffDiagonal(InputError):
    pass


class NonZeroDiagonalInput(InputError):
    pass


class NonFiniteEntry(InputError):
    pass


class MatrixParseError(InputError):
    pass


class UnsupportedShape(InputError):
    """The mapped method was requested for a diagonal it cannot handle."""


class OddOrder(InputError):
    pass


class TotalMismatch(InputError):
    """Two spectra with different total multiplicity cannot be matched."""


# =============================================================================
# NUMERICAL ERRORS
# =============================================================================

class NumericalError(TridiagError, ArithmeticError):
    """A numerical gate was not met."""


class ParityViolation(NumericalError):
    """A wrong-parity coefficient exceeds the parity tolerance."""


class ParityError(NumericalError):
    """Zero multiplicity is inconsistent with the matrix order."""


class PairingFailure(NumericalError):
    """A nonzero eigenvalue has no negation partner."""


class NoConvergence(NumericalError):
    pass


class NotAnEigenvalue(NumericalError):
    pass


class ChainBreak(NumericalError):
    """The requested Jordan chain is longer than the eigenvalue allows."""


class DegenerateMu(NumericalError):
    """mu is zero; the zero-eigenvalue construction applies instead."""


class InsufficientChain(NumericalError):
    pass
