"""Loss-attitude-aware energy management for binary signal detection."""

from .detection import (
    AccuracyCurve,
    ChernoffModel,
    GaussianShiftModel,
    chernoff_accuracy,
    chernoff_information,
    gaussian_accuracy,
    gaussian_accuracy_derivative,
    gaussian_inverse_derivative,
)
from .errors import ConvergenceError, DomainError, UsageError, ValidationError
from .special_functions import Tolerance, q_function, wright_omega
from .utility import (
    EconomicParams,
    EnergyDecision,
    FixedZero,
    ProspectParams,
    Regime,
    WeightedAverage,
    beta_threshold,
    expected_utility,
    optimal_energy_eu,
    optimal_energy_pt_fixed,
    optimal_energy_pt_weighted,
    subjective_utility_fixed,
    subjective_utility_weighted,
)

__version__ = "0.1.0"
