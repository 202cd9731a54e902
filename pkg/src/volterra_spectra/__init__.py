"""Singular-value decay of the Volterra operator A = C o J on L2(0, 1).

A maps x to (Ax)(s) = integral_0^s (s - t)/s x(t) dt. It is the Cesaro
average applied after integration. This package discretizes A and related
operators, measures power-law decay of their spectra, and checks the
analytic Hilbert-Schmidt identities in the shifted Legendre basis.
"""

from .discretize import DiscreteOperator, Grid, build_grid, discretize, gamma_fn, kernel_AstarA, kernel_value
from .errors import InvalidArgument, NumericFailure, ParseError, UnsupportedKernel
from .fd_scheme import FdScheme, fd_eigenvalues, fd_generalized_eigenvalues
from .legendre import (
    HS_NORM_SQ,
    TailCheck,
    TailReport,
    a_image,
    apply_A,
    galerkin_singular_values,
    legendre_q,
    legendre_tail,
    norm_AP_squared,
    shifted_P,
    tail_report,
    tail_to_pointwise,
    verify_pointwise_bound,
    verify_tail_bound,
)
from .operators import A, Cesaro, Compose, J, Jkappa, Mult, parse_operator_expr
from .spectral import DecayFit, SingularSpectrum, fit_decay, singular_values, symmetric_eigenvalues
from .witnesses import WitnessResult, chi_witness, cosine_witness, estimate_operator_norm

__version__ = "0.1.0"

__all__ = [
    "A", "Cesaro", "Compose", "J", "Jkappa", "Mult", "parse_operator_expr",
    "Grid", "DiscreteOperator", "build_grid", "discretize", "gamma_fn", "kernel_value", "kernel_AstarA",
    "SingularSpectrum", "DecayFit", "singular_values", "symmetric_eigenvalues", "fit_decay",
    "FdScheme", "fd_eigenvalues", "fd_generalized_eigenvalues",
    "HS_NORM_SQ", "TailCheck", "TailReport", "a_image", "apply_A", "galerkin_singular_values",
    "legendre_q", "legendre_tail", "norm_AP_squared", "shifted_P", "tail_report", "tail_to_pointwise",
    "verify_pointwise_bound", "verify_tail_bound",
    "WitnessResult", "chi_witness", "cosine_witness", "estimate_operator_norm",
    "InvalidArgument", "NumericFailure", "ParseError", "UnsupportedKernel",
]
