"""Hyper-Bessel functions: series, zeros, geometric radii and inequality checks."""
from .exceptions import (
    BadDimension,
    BracketFailure,
    ComputationError,
    DegenerateBound,
    DimensionMismatch,
    DomainError,
    HyperBesselError,
    MissedZeroSuspected,
    NoConvergence,
    OutOfDomain,
)
from .params import HyperBesselOrder, structural_constants, validate_order
from .series import FunctionKind, SeriesValue, eval_normalized
from .zeros import ZeroTable, first_zero, zeros_up_to

__all__ = [
    "BadDimension", "BracketFailure", "ComputationError", "DegenerateBound",
    "DimensionMismatch", "DomainError", "HyperBesselError", "MissedZeroSuspected",
    "NoConvergence", "OutOfDomain", "HyperBesselOrder", "structural_constants",
    "validate_order", "FunctionKind", "SeriesValue", "eval_normalized", "ZeroTable",
    "first_zero", "zeros_up_to",
]
__version__ = "0.1.0"
