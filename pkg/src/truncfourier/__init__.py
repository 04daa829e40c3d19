"""Spectral theory of the Fourier operator truncated to the half-axis, numerically.

Modules
-------
special             Gamma on the critical line, overflow-safe hyperbolics
symbol              the 2x2 symbol F(mu), its eigen-structure and resolvent
mellin              the unitary log-grid transform onto the model space
admissible          spectral sets, function specs, admissible norms
model_ops           functions of the operator, projectors, norms, L
resolvent_calculus  Poisson-kernel calculus from resolvent jumps
oracle              direct quadrature and brute-force ground truth
signals             named test signals
cli                 command-line front end
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainError,
    DomainWarning,
    NotAdmissibleError,
    NotInvertibleError,
    PlanMismatchError,
    SingularMatrixError,
    SpectralPointError,
    TruncFourierError,
    ValidationError,
)
from .mellin import ModelVector, SampledSignal, TransformPlan, reference_plan  # noqa: E402
from .admissible import SpectralSet  # noqa: E402

__all__ = [
    "__version__",
    "DomainError",
    "DomainWarning",
    "NotAdmissibleError",
    "NotInvertibleError",
    "PlanMismatchError",
    "SingularMatrixError",
    "SpectralPointError",
    "TruncFourierError",
    "ValidationError",
    "ModelVector",
    "SampledSignal",
    "TransformPlan",
    "reference_plan",
    "SpectralSet",
]
