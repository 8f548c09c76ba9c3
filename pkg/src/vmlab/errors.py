"""Exception hierarchy.

Every error raised on malformed input derives from :class:`VMLabError`, which
is a ``ValueError`` so callers that only care about "bad input" can catch that.
"""


class VMLabError(ValueError):
    """Base class for all validation and guard errors."""


class NonPositiveMass(VMLabError):
    pass


class MassNotOne(VMLabError):
    pass


class TooManyAtoms(VMLabError):
    pass


class SpaceMismatch(VMLabError):
    pass


class BadExponent(VMLabError):
    pass


class DimensionMismatch(VMLabError):
    pass


class TooManyVertices(VMLabError):
    pass


class EmptyFamily(VMLabError):
    pass


class ZeroFamily(VMLabError):
    pass


class UnsupportedRegime(VMLabError):
    pass


class IndexOutOfRange(VMLabError):
    pass


class DualNormViolation(VMLabError):
    pass


class InfeasibleLP(VMLabError):
    pass


class DescriptorMismatch(VMLabError):
    pass


class FamilyNotCovered(VMLabError):
    pass


class TooManyLevels(VMLabError):
    pass


class DimensionTooLarge(VMLabError):
    pass


class MissingChain(VMLabError):
    pass


class NotNorming(VMLabError):
    pass


class InvalidPartition(VMLabError):
    pass


class MalformedInput(VMLabError):
    """A JSON document is missing keys or has values of the wrong shape."""
