"""
Error Types
Exception hierarchy shared by the numerical library and the verification CLI
"""


class VerificationError(Exception):
    """Base class for every error raised by this package"""


class DimensionMismatch(VerificationError, ValueError):
    """Coordinate vectors do not match the domain dimension"""


class PointOutsideDomain(VerificationError, ValueError):
    """A point required to lie in the domain does not"""


class UnsupportedDomain(VerificationError, ValueError):
    """Domain kind or size outside the supported range"""


class InvalidSignature(VerificationError, ValueError):
    """Signature is not a non-increasing tuple of non-negative integers"""


class NotUnitary(VerificationError, ValueError):
    """Group element fails its unitarity tolerance"""


class SingularB(VerificationError, ArithmeticError):
    """The Bergman operator is numerically singular"""


class GuardViolation(VerificationError, ArithmeticError):
    """A quadrature node left the analyticity region after all radius halvings"""


class NonConvergent(VerificationError, ArithmeticError):
    """Two-radius quadrature estimates disagree beyond tolerance"""


class BranchAmbiguity(VerificationError, ArithmeticError):
    """The Jacobian power cannot be continued from the identity"""


class AcceptanceTooLow(VerificationError, RuntimeError):
    """Rejection sampling accepts too few proposals"""


class NegativeIntegrand(VerificationError, RuntimeError):
    """A positive-definite integrand evaluated negative"""


class InconclusiveProbe(VerificationError, RuntimeError):
    """Integrability increments neither converge nor grow at the predicted rate"""


class ConfigInvalid(VerificationError, ValueError):
    """Configuration file, suite or flags cannot be used"""


class UnknownCheck(ConfigInvalid):
    """A suite references a check id missing from the registry"""
