"""Exception hierarchy.

Two families matter to callers: structural problems with the inputs
(``ValidationError``, CLI exit code 2) and mathematically infeasible
requests on otherwise well-formed inputs (``InfeasibleError``, CLI exit
code 3).
"""


class PseudospinError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class ValidationError(PseudospinError):
    """Input violates a structural precondition."""

    exit_code = 2


class InfeasibleError(PseudospinError):
    """Well-formed input with no mathematically valid answer."""

    exit_code = 3


class NonTracelessError(ValidationError):
    """Operator expected traceless within tolerance."""


class InvalidMetricError(ValidationError):
    """Metric operator is not Hermitian positive-definite within tolerance."""


class SingularMetricError(ValidationError):
    """Metric operator is not invertible."""


class PlaneRestrictionViolatedError(ValidationError):
    """Second field component must vanish for the plane-restricted formulas."""


class NormMismatchError(ValidationError):
    """Complex squares of the two fields disagree (no orthogonal map exists)."""


class DegenerateFieldError(ValidationError):
    """Field has vanishing complex square-sum; construction is singular."""


class SingularEigenbasisError(ValidationError):
    """First field component vanishes; the closed-form eigenvectors divide by it."""


class NonRealLimitError(InfeasibleError):
    """Field family does not reach a real nonzero field at zero damping."""


class NonPseudoHermitianError(InfeasibleError):
    """Field square is not a nonnegative real number."""


class ZeroStateError(ValidationError):
    """State vector is (numerically) zero."""


class NonHomogeneousError(ValidationError):
    """Grassmann element has no definite parity."""


class NoRealSolutionError(InfeasibleError):
    """Suppression condition has no real solution for these parameters."""


class ImaginaryFrequencyError(InfeasibleError):
    """Requested oscillation frequency is imaginary (detuning on the wrong side)."""


class NotRotatableError(InfeasibleError):
    """Hamiltonian is not time-independent in the rotating frame."""


class StepTooLargeError(InfeasibleError):
    """Integrator step produced a suspiciously large single-step norm drift."""
