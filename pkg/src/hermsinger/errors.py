"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HermSingerError(Exception):
    """Base class for all errors raised by this package."""


# field tower
class CapExceeded(HermSingerError):
    pass


class NotPrime(HermSingerError):
    pass


class BadSubfieldIndex(HermSingerError):
    pass


class OrderNotDividing(HermSingerError):
    pass


class ZeroPolynomial(HermSingerError):
    pass


# geometry
class NotSubplaneLine(HermSingerError):
    pass


class BadParameter(HermSingerError):
    pass


class OrbitNotOnFamily(HermSingerError):
    """A Singer orbit lies on a number of curves other than q+1 (a bug, never a legal state)."""


class SameCurve(HermSingerError):
    pass


class NoFrameElement(HermSingerError):
    pass


class NormalizationFailure(HermSingerError):
    pass


# function spaces
class BelowThreshold(HermSingerError):
    pass


class BadAuxiliaryCurve(HermSingerError):
    pass


class LambdaOutOfRange(HermSingerError):
    pass


class NotEnoughChords(HermSingerError):
    pass


class InsufficientCurves(HermSingerError):
    pass


class InterpolationFailure(HermSingerError):
    pass


class RankShortfall(HermSingerError):
    """A spanning set failed to reach the Riemann-Roch dimension."""


# codes
class PoleOnDomain(HermSingerError):
    pass


class BudgetExceeded(HermSingerError):
    pass


class UnknownClaim(HermSingerError):
    pass
