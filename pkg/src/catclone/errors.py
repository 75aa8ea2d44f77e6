"""Exception types raised across the package.

Every error is a ``ValueError`` subclass so callers that only care about
"bad input" can catch one thing; the CLI maps :class:`CatCloneError` to
exit code 2.
"""


class CatCloneError(ValueError):
    pass


# linear algebra kernel
class NotHermitian(CatCloneError):
    pass


class NoConvergence(CatCloneError):
    pass


class NotUnitary(CatCloneError):
    pass


# states and operators
class NotNormalized(CatCloneError):
    pass


class WeightMismatch(CatCloneError):
    pass


class DimensionMismatch(CatCloneError):
    pass


class BadTargets(CatCloneError):
    pass


class BadCut(CatCloneError):
    pass


# CAT labels
class BadAlpha(CatCloneError):
    pass


class BadTail(CatCloneError):
    pass


class BadN(CatCloneError):
    pass


class BadLabel(CatCloneError):
    pass


class LabelMismatch(CatCloneError):
    pass


class RankTooHigh(CatCloneError):
    pass


# protocols
class BadDimension(CatCloneError):
    pass


class IncompleteMeasurement(CatCloneError):
    pass


class LocalityViolation(CatCloneError):
    pass


# witnesses
class SingularCoefficients(CatCloneError):
    pass


class BadRange(CatCloneError):
    pass
