"""Spectral-data toolkit for rank-2, trivial-determinant bundle moduli on a
classical Hopf surface: jump stratification of graph divisors, hyperelliptic
period matrices of spectral curves, and certified discriminant-avoiding paths
between moduli points."""

from ._kernels import BACKEND as kernel_backend
from .divisors import (
    FiberKind,
    FiberType,
    GraphDivisor,
    SpectralCurve,
    StratumReport,
    fiber_type,
    is_regular,
    is_stable_witness,
    regularity_margin,
    spectral_curve,
    stratify,
)
from .forms import BinaryForm, ProjectiveRoot, discriminant, gcd, resultant, roots
from .hopf import (
    DEFAULT_HOPF,
    BranchValues,
    HalfPeriodSet,
    HopfParameter,
    branch_values,
    half_periods,
    j_from_tau,
    quotient_fiber,
    quotient_map,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "BranchValues",
    "DEFAULT_HOPF",
    "FiberKind",
    "FiberType",
    "GraphDivisor",
    "HalfPeriodSet",
    "HopfParameter",
    "ProjectiveRoot",
    "SpectralCurve",
    "StratumReport",
    "branch_values",
    "discriminant",
    "fiber_type",
    "gcd",
    "half_periods",
    "is_regular",
    "is_stable_witness",
    "j_from_tau",
    "kernel_backend",
    "quotient_fiber",
    "quotient_map",
    "regularity_margin",
    "resultant",
    "roots",
    "spectral_curve",
    "stratify",
]
