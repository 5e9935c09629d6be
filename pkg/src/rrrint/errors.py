"""Exception hierarchy shared across the package."""

from __future__ import annotations


class RRRError(Exception):
    """Base class for all package errors."""


# linalg
class NotSymmetric(RRRError):
    pass


class NotPositiveDefinite(RRRError):
    pass


class RankTooLarge(RRRError):
    pass


class RankDeficient(RRRError):
    pass


class SingularNormalMatrix(RRRError):
    pass


class SingularBlock(RRRError):
    pass


class SingularSchurComplement(RRRError):
    pass


class SelectorSingular(RRRError):
    pass


# dgp
class InvalidSpec(RRRError):
    pass


class RankDeficiencyAmbiguous(RRRError):
    pass


class UnstableBlock(RRRError):
    pass


class NotI1(RRRError):
    pass


class InfeasibleDimensions(RRRError):
    pass


class TooShort(RRRError):
    pass


# covest / estimators
class LengthMismatch(RRRError):
    pass


class LagOutOfRange(RRRError):
    pass


class SingularGram(RRRError):
    pass


class SingularLongRun(RRRError):
    pass


class WffNotPositiveDefinite(RRRError):
    pass


class SingularMoment(RRRError):
    pass


# mc / cli
class IdentityViolation(RRRError):
    """An exact algebraic identity failed beyond its tolerance."""


class ConfigError(RRRError):
    """Invalid configuration; ``key`` is the dotted path of the offending entry."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key
