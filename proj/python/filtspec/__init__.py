"""Spectra of self-adjoint operators from finite-section compressions."""

from ._filtspec import (
    ConfigError,
    ConvergenceError,
    DiagnosticError,
    DomainError,
    Error,
    Ladder,
    Operator,
    SymmetryError,
    UnsupportedError,
    almost_mathieu,
    build_ladder,
    classify,
    commutator_hs_norm,
    compress,
    counting,
    degree_estimate,
    dfnorm_bound,
    eigenvalues,
    fourier_coefficients,
    hamiltonian,
    lambda_membership,
    laurent,
    load_config,
    parse_config,
    permutation,
    singular_values,
    spectrum_estimate,
    symmetric_eigenvalues,
    szego_gaps,
    toeplitz,
)

__all__ = [name for name in dir() if not name.startswith("_")]
