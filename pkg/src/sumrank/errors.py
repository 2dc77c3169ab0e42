"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SumRankError(Exception):
    """Base class for every error raised by this package."""


# finite fields
class NormPreimageOfZero(SumRankError, ValueError):
    pass


class InvalidExponent(SumRankError, ValueError):
    pass


# local arithmetic
class IndexOutOfRange(SumRankError, IndexError):
    pass


class PrecisionExhausted(SumRankError, ArithmeticError):
    """A valuation or comparison cannot be certified at the stored precision."""


class NotIntegral(SumRankError, ValueError):
    pass


# Ore algebra
class MixedRings(SumRankError, TypeError):
    pass


class MixedModuli(SumRankError, ValueError):
    pass


class NotCentral(SumRankError, ValueError):
    pass


class NonInvertibleU(SumRankError, ValueError):
    pass


class ModulusNotOne(SumRankError, ValueError):
    pass


# curves
class PoleAtPlace(SumRankError, ValueError):
    pass


# codes
class TooFewPlaces(SumRankError, ValueError):
    pass


class HypothesisFailed(SumRankError, ValueError):
    pass


class LengthMismatch(SumRankError, ValueError):
    pass


class ShapeMismatch(SumRankError, ValueError):
    pass


class EnumerationTooLarge(SumRankError, ValueError):
    pass


class InvalidSubspaceDim(SumRankError, ValueError):
    pass


class BoundViolation(SumRankError, AssertionError):
    """A computed parameter falls outside its proven bracket."""


class DescriptorError(SumRankError, ValueError):
    """A code descriptor file is malformed or internally inconsistent."""


# bounds
class InvalidQ(SumRankError, ValueError):
    pass


class DeltaTooSmall(SumRankError, ValueError):
    pass


class QNotSquare(InvalidQ):
    pass
