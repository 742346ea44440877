"""Exception hierarchy.

Input problems map to CLI exit code 2, broken internal invariants to 3.
"""

from __future__ import annotations


class RecoveryError(Exception):
    exit_code = 2


class InputError(RecoveryError, ValueError):
    """Raised when the caller hands over an unusable instance."""


class NegativeCoefficient(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotNormalized(InputError):
    pass


class SumMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class ZeroState(InputError):
    pass


class InvalidState(InputError):
    pass


class NotMajorized(InputError):
    pass


class NotStrict(InputError):
    pass


class BadPartition(InputError):
    pass


class NoEqualityStructure(InputError):
    pass


class BadParameters(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class EpsilonOutOfRange(InputError):
    pass


class BadPair(InputError):
    pass


class UnsupportedStructure(InputError):
    """The grouped sufficient condition has no solution for this layout."""


class InternalError(RecoveryError, RuntimeError):
    exit_code = 3


class WitnessSearchFailed(InternalError):
    pass


class ConstructionFailed(InternalError):
    pass
