"""Markov-Krein transforms of interpolating families between the Wigner
semicircle and the arcsine law: measures, Cauchy-Stieltjes transforms,
moments and free-probability transforms."""

from .errors import (
    BranchError,
    ConvergenceError,
    DomainError,
    NotAProbabilityMeasure,
    NumericalError,
    UnsupportedError,
)
from .measures import FamilySpec, SpectralMeasure, family, mu_measure, nu_measure, tau_measure

__version__ = "0.1.0"

__all__ = [
    "BranchError",
    "ConvergenceError",
    "DomainError",
    "NotAProbabilityMeasure",
    "NumericalError",
    "UnsupportedError",
    "FamilySpec",
    "SpectralMeasure",
    "family",
    "mu_measure",
    "nu_measure",
    "tau_measure",
]
