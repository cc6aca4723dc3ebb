"""Heat kernels, fractional powers and square functions on graded groups."""

from ._graded import (
    DomainError,
    NonConvergence,
    ParseError,
    SupportOverflow,
    checks,
    counterexample_slope,
    frac_power,
    g_alpha_norm,
    gamma,
    heat_kernel,
    inverse,
    kummer_reg,
    multiply,
    phi_alpha,
    psi,
    quasi_norm,
    run_check,
)

__all__ = [
    "DomainError",
    "NonConvergence",
    "ParseError",
    "SupportOverflow",
    "checks",
    "counterexample_slope",
    "frac_power",
    "g_alpha_norm",
    "gamma",
    "heat_kernel",
    "inverse",
    "kummer_reg",
    "multiply",
    "phi_alpha",
    "psi",
    "quasi_norm",
    "run_check",
]
