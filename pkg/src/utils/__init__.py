from .logger import get_logger, set_level, SuiteLogger
from .errors import (
    VerificationError,
    DimensionMismatch,
    PointOutsideDomain,
    UnsupportedDomain,
    InvalidSignature,
    NotUnitary,
    SingularB,
    GuardViolation,
    NonConvergent,
    BranchAmbiguity,
    AcceptanceTooLow,
    NegativeIntegrand,
    InconclusiveProbe,
    ConfigInvalid,
    UnknownCheck,
)

__all__ = [
    'get_logger', 'set_level', 'SuiteLogger',
    'VerificationError', 'DimensionMismatch', 'PointOutsideDomain',
    'UnsupportedDomain', 'InvalidSignature', 'NotUnitary', 'SingularB',
    'GuardViolation', 'NonConvergent', 'BranchAmbiguity', 'AcceptanceTooLow',
    'NegativeIntegrand', 'InconclusiveProbe', 'ConfigInvalid', 'UnknownCheck',
]
