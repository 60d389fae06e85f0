"""
Zero counting N(T), the fluctuating part S(T), and the count consistency check.

SLOs:
- Correctness: N(T) counts γ < T strictly, plus 1/2 per zero with |γ - T| < 1e-12
- Correctness: main_term(T, 7/8) + s_of_t(T) reproduces count_zeros(T)
- Observability: Suspect tables raise SuspectTableWarning and are logged
- Maintainability: Binary search on the sorted table (np.searchsorted)

Error Handling: raise_and_propagate
- HeightExceededError when T lies above the table's completeness height
- DomainError for S(T) with T < 10
"""

import logging
import warnings

import numpy as np
from numpy.typing import ArrayLike, NDArray

from zeta_fluctuations.core.predictor import COUNTING_CONSTANT_T, main_term
from zeta_fluctuations.data.zero_table import ZeroTable
from zeta_fluctuations.errors import DomainError, HeightExceededError, SuspectTableWarning

logger = logging.getLogger(__name__)

HALF_COUNT_TOLERANCE = 1e-12
SUSPECT_DISCREPANCY = 3


def _heights(table: ZeroTable, T: ArrayLike) -> NDArray[np.float64]:
    ts = np.asarray(T, dtype=np.float64)
    if ts.size and float(ts.max()) > table.max_height:
        raise HeightExceededError(
            f"T = {float(ts.max())} exceeds table completeness height {table.max_height}"
        )
    return ts


def count_zeros(table: ZeroTable, T: ArrayLike) -> NDArray[np.float64] | float:
    """
    N(T): zeros with 0 < γ < T, a zero within 1e-12 of T counted as 1/2.

    Args:
        table: Zero table complete below T
        T: Height or array of heights

    Returns:
        N(T) as float (half-integers possible)

    Raises:
        HeightExceededError: If T > table.max_height
    """
    ts = _heights(table, T)
    z = table.zeros
    below = np.searchsorted(z, ts - HALF_COUNT_TOLERANCE, side="right")
    near = np.searchsorted(z, ts + HALF_COUNT_TOLERANCE, side="left") - below
    n = below.astype(np.float64) + 0.5 * near.astype(np.float64)
    if n.ndim == 0:
        return float(n)
    return n


def s_of_t(table: ZeroTable, T: ArrayLike) -> NDArray[np.float64] | float:
    """
    S(T) = N(T) - main_term(T, 7/8), the O(1/(1+T)) term absorbed.

    Raises:
        DomainError: If T < 10
        HeightExceededError: If T > table.max_height
    """
    ts = np.asarray(T, dtype=np.float64)
    if ts.size and float(ts.min()) < 10.0:
        raise DomainError(f"s_of_t requires T >= 10, got {float(ts.min())}")
    n = count_zeros(table, ts)
    value = np.asarray(n) - np.asarray(main_term(ts, COUNTING_CONSTANT_T))
    if value.ndim == 0:
        return float(value)
    return value


def verify_count(table: ZeroTable, T: float) -> int:
    """
    Discrepancy N(T) - round(M(T)) between the table count and the main term.

    S(T) is small at desk heights, so |discrepancy| > 3 marks the table as suspect
    (SuspectTableWarning); the discrepancy is returned either way.

    Raises:
        HeightExceededError: If T > table.max_height
    """
    n = float(count_zeros(table, T))
    m = float(main_term(T, COUNTING_CONSTANT_T))
    discrepancy = int(round(n - round(m)))
    if abs(discrepancy) > SUSPECT_DISCREPANCY:
        logger.warning(
            "Zero table suspect at T=%.6f: N(T)=%s, M(T)=%.4f, discrepancy=%d",
            T, n, m, discrepancy,
        )
        warnings.warn(
            f"N({T}) - round(M({T})) = {discrepancy}: table may be missing zeros",
            SuspectTableWarning,
            stacklevel=2,
        )
    return discrepancy
