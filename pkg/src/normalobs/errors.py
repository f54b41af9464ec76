"""Exception types raised across the package."""


class NormalObsError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(NormalObsError):
    """Operands have incompatible dimensions."""


class NotHermitian(NormalObsError):
    """A matrix required to be Hermitian is not, within tolerance."""


class NotNormal(NormalObsError):
    """A matrix required to be normal is not, within tolerance.

    Carries the commutation residual ||M^dag M - M M^dag||_F in
    ``residual`` when available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotCommuting(NormalObsError):
    """Two Hermitian matrices required to commute do not, within tolerance."""


class NotNormalized(NormalObsError):
    """A state vector is not unit-norm within tolerance."""


class NotUnimodular(NormalObsError):
    """An eigenvalue or outcome label required to have modulus 1 does not."""


class NotHermitianUnitary(NormalObsError):
    """An observable required to be Hermitian with square identity is not."""


class DuplicateLabels(NormalObsError):
    """A relabeling maps two distinct eigenspaces to the same value."""


class ZeroProbabilityBranch(NormalObsError):
    """Attempted collapse onto an eigenspace with (numerically) zero probability."""


class ConvergenceFailure(NormalObsError):
    """An iterative routine failed to reach its tolerance within its sweep budget."""


class InternalInvariantViolation(NormalObsError):
    """A quantity the implementation guarantees was violated; indicates a bug."""


class DocumentError(NormalObsError):
    """A document file failed to parse or validate; message names the field."""
