"""Subordinated Brownian motion Y(t) = B(S(t)) with stable, tempered stable and gamma clocks."""

from ._subdiff import (
    BudgetError,
    ConvergenceError,
    CoverageError,
    DomainError,
    Family,
    GridError,
    OverflowError,
    Spec,
    SubdiffError,
    covariance_analytic,
    f_recursion,
    fit_power_law,
    match_gamma_to_ts,
    memory_kernel,
    memory_kernel_limit,
    mittag_leffler,
    msd_analytic,
    msd_ensemble,
    msd_time_avg,
    pdf_gamma,
    pdf_stable,
    pdf_tempered_stable,
    sample_increments,
    simulate_ensemble,
)

__version__ = "0.1.0"
