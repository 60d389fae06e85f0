"""
Zeta Zero Fluctuations Laboratory.

Zero tables for the Riemann zeta function on the critical line, normalised fluctuations of
zeros around their predicted locations, and their comparison with Gaussian targets.
"""

__version__ = "0.3.0"

# Zero tables
from zeta_fluctuations.data import (  # noqa: F401
    ZeroCache,
    ZeroTable,
    ingest_table,
    read_table,
    write_table,
)

# Core numerics
from zeta_fluctuations.core import (  # noqa: F401
    GFunction,
    PredictedGrid,
    PrimeSieve,
    compute_table,
    count_zeros,
    find_zeros,
    hardy_z,
    main_term,
    predicted_grid,
    riemann_siegel_theta,
    s_of_t,
    s_x,
    sigma,
    solve_t,
    verify_count,
)

# Statistics
from zeta_fluctuations.statistics import (  # noqa: F401
    CovarianceReport,
    MomentReport,
    fluctuations,
    gauss_moment,
    wick_bivariate,
)

__all__ = [
    # Zero tables
    "ZeroCache",
    "ZeroTable",
    "ingest_table",
    "read_table",
    "write_table",
    # Core
    "GFunction",
    "PredictedGrid",
    "PrimeSieve",
    "compute_table",
    "count_zeros",
    "find_zeros",
    "hardy_z",
    "main_term",
    "predicted_grid",
    "riemann_siegel_theta",
    "s_of_t",
    "s_x",
    "sigma",
    "solve_t",
    "verify_count",
    # Statistics
    "CovarianceReport",
    "MomentReport",
    "fluctuations",
    "gauss_moment",
    "wick_bivariate",
]
