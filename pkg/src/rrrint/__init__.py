"""Rank-restricted regression with integrated regressors: estimators, simulators and asymptotics."""

__version__ = "0.1.0"

from . import asymptotics, covest, dgp, estimators, linalg  # noqa: F401
