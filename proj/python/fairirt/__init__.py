"""Beta item response theory for fairness evaluation of predictive models."""

from ._core import (
    FairIrtError,
    beta_icc,
    beta_log_density,
    beta_shapes,
    fairness_flag,
    fit_beta_irt,
    flatness_indicator,
    icc_derivative,
    log_delta_component,
    log_theta_component,
    logistic_icc,
    simulate,
    sts_classification,
    sts_regression,
    tabulate_icc,
)

__all__ = [
    "FairIrtError",
    "beta_icc",
    "beta_log_density",
    "beta_shapes",
    "fairness_flag",
    "fit_beta_irt",
    "flatness_indicator",
    "icc_derivative",
    "log_delta_component",
    "log_theta_component",
    "logistic_icc",
    "simulate",
    "sts_classification",
    "sts_regression",
    "tabulate_icc",
]
