"""Core numerics: Hardy Z, zero search, predicted locations, counting and prime sums."""

from zeta_fluctuations.core.arithmetic import (
    PrimeSieve,
    is_prime,
    lambda_,
    lambda_x,
    s_x,
    s_x_weighted,
)
from zeta_fluctuations.core.counting import count_zeros, s_of_t, verify_count
from zeta_fluctuations.core.predictor import (
    COUNTING_CONSTANT_G,
    COUNTING_CONSTANT_T,
    GFunction,
    PredictedGrid,
    g_eval,
    g_second_derivative,
    main_term,
    predicted_grid,
    sigma,
    solve_t,
)
from zeta_fluctuations.core.riemann_siegel import (
    gram_point,
    gram_points,
    hardy_z,
    riemann_siegel_theta,
    zeta_critical_line,
)
from zeta_fluctuations.core.zeros import GramBlock, compute_table, find_zeros, gram_blocks

__all__ = [
    # Riemann–Siegel
    "riemann_siegel_theta",
    "hardy_z",
    "zeta_critical_line",
    "gram_point",
    "gram_points",
    # Zero search
    "GramBlock",
    "gram_blocks",
    "find_zeros",
    "compute_table",
    # Predictor
    "COUNTING_CONSTANT_T",
    "COUNTING_CONSTANT_G",
    "GFunction",
    "PredictedGrid",
    "main_term",
    "solve_t",
    "sigma",
    "predicted_grid",
    "g_eval",
    "g_second_derivative",
    # Counting
    "count_zeros",
    "s_of_t",
    "verify_count",
    # Arithmetic
    "PrimeSieve",
    "is_prime",
    "lambda_",
    "lambda_x",
    "s_x",
    "s_x_weighted",
]
