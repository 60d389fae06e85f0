"""Exponential-sum experiments and prime phase sums."""

from zeta_fluctuations.experiments.expsum import (
    Battery,
    ExpSumExperiment,
    direct_exp_sum,
    lambda_kappa_for_prime_tuple,
    mertens_sums,
    phase_sum_trend,
    prime_phase_sum,
    run_battery,
    two_point_phase_sum,
    unique_factorization_check,
    vdc_bound,
)

__all__ = [
    "Battery",
    "ExpSumExperiment",
    "direct_exp_sum",
    "vdc_bound",
    "lambda_kappa_for_prime_tuple",
    "two_point_phase_sum",
    "prime_phase_sum",
    "mertens_sums",
    "run_battery",
    "phase_sum_trend",
    "unique_factorization_check",
]
