"""Window sampling, Gaussian moment oracles and report models."""

from zeta_fluctuations.statistics.gaussian_oracle import (
    PairingCount,
    gauss_moment,
    gaussian_joint_moment_real,
    pairing_counts,
    s_moment_constant,
    wick_bivariate,
)
from zeta_fluctuations.statistics.reports import CovarianceReport, MomentReport, MomentRow
from zeta_fluctuations.statistics.sampler import (
    covariance_report,
    empirical_cdf_vs_gaussian,
    fluctuations,
    joint_moment_report,
    moment_report,
    sample_indices,
    two_point_samples,
    x_samples,
)

__all__ = [
    # Gaussian oracle
    "PairingCount",
    "gauss_moment",
    "gaussian_joint_moment_real",
    "pairing_counts",
    "s_moment_constant",
    "wick_bivariate",
    # Reports
    "CovarianceReport",
    "MomentReport",
    "MomentRow",
    # Sampling
    "sample_indices",
    "fluctuations",
    "x_samples",
    "empirical_cdf_vs_gaussian",
    "moment_report",
    "two_point_samples",
    "covariance_report",
    "joint_moment_report",
]
