"""Exception types raised across the package."""


class IntrinsicSpinError(Exception):
    """Base class for all package errors."""


class OffShellMomentum(IntrinsicSpinError, ValueError):
    """A four-momentum violates p.p = -m^2 beyond tolerance, or has p0 <= 0."""


class NotARotation(IntrinsicSpinError, ValueError):
    """A Lorentz matrix expected to fix the time axis does not."""


class MissingSector(IntrinsicSpinError, KeyError):
    """An operator family has no matrix at the requested momentum."""


class NonFiniteEvaluation(IntrinsicSpinError, ArithmeticError):
    """A classical property evaluator returned NaN or inf."""


class OrthogonalityViolated(IntrinsicSpinError, ValueError):
    """A 3-vector candidate A(v) is not orthogonal to v."""


class NotHermitian(IntrinsicSpinError, ValueError):
    """A matrix expected to be Hermitian is not."""
