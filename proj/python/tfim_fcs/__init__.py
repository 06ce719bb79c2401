"""Defect counting statistics of transverse-field Ising quenches."""

from ._core import (
    DEFAULT_ENERGY_SCALE,
    __version__,
    cumulants,
    dispersion,
    distribution,
    dynamic_profile,
    fit_exponential_decay,
    fit_power_law,
    kappa1_exact,
    kappa1_series,
    kappa2_exact,
    kappa3_exact,
    kappa3_series,
    kappa_slow_approx,
    kink_cumulants,
    momenta,
    pk_exponential_ansatz,
    run_cli,
    sample_counts,
    sudden_pk,
    sudden_pk_critical,
    sudden_pk_second_order,
    sudden_profile,
    total_variation,
)

__all__ = [
    "DEFAULT_ENERGY_SCALE",
    "__version__",
    "cumulants",
    "dispersion",
    "distribution",
    "dynamic_profile",
    "fit_exponential_decay",
    "fit_power_law",
    "kappa1_exact",
    "kappa1_series",
    "kappa2_exact",
    "kappa3_exact",
    "kappa3_series",
    "kappa_slow_approx",
    "kink_cumulants",
    "momenta",
    "pk_exponential_ansatz",
    "run_cli",
    "sample_counts",
    "sudden_pk",
    "sudden_pk_critical",
    "sudden_pk_second_order",
    "sudden_profile",
    "total_variation",
]
