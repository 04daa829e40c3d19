"""Exception hierarchy shared by all modules."""


class TruncFourierError(Exception):
    """Base class for library errors."""


class DomainError(TruncFourierError, ArithmeticError):
    """A numerical-domain violation: the requested value does not exist or is not representable."""


class SingularMatrixError(DomainError):
    """A 2x2 matrix (or operator) is not invertible at the requested point."""


class SpectralPointError(DomainError):
    """The resolvent was requested at a point of the spectrum."""


class NotAdmissibleError(DomainError):
    """A function or set fails the admissibility test, so the operator it defines is unbounded."""


class NotInvertibleError(DomainError):
    """A spectral function vanishes essentially on the spectrum and has no admissible inverse."""


class PlanMismatchError(TruncFourierError, ValueError):
    """Operands live on different transform plans."""


class ValidationError(TruncFourierError, ValueError):
    """Malformed input (bad configuration, unknown names, wrong shapes)."""


class DomainWarning(UserWarning):
    """A computation succeeded but its discretization assumptions look violated."""
