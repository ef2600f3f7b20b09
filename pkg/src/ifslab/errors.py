"""Exception types shared across the package."""


class IfsLabError(Exception):
    """Base class for all ifslab errors."""


class LambdaOutOfRange(IfsLabError):
    pass


class DuplicatePoints(IfsLabError):
    pass


class DegenerateAffineHull(IfsLabError):
    pass


class DigitOutOfRange(IfsLabError):
    pass


class DimensionMismatch(IfsLabError):
    pass


class PointOutsideOmega(IfsLabError):
    pass


class BudgetExceeded(IfsLabError):
    pass


class NoEllFound(IfsLabError):
    pass


class UnsortedDigits(IfsLabError):
    pass


class BadProbabilityVector(IfsLabError):
    pass


class TooFewScales(IfsLabError):
    pass


class CertificateRequired(IfsLabError):
    pass


class IrrationalInput(IfsLabError):
    pass


class UnsupportedDimension(IfsLabError):
    pass
