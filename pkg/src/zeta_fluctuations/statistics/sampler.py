"""
Exhaustive window sampling of normalised zero fluctuations and their Gaussian comparisons.

The uniform index k(N, ω) on I_N = [N, N + H - 1] is enumerated atom by atom, so every
probability is an exact frequency |{k ∈ I_N : event}| / H and no Monte-Carlo error enters.

SLOs:
- Correctness: f_k = (γ_k - t_k)/σ_k and X_k = √2 π S(g_k)/√(log log t_k) computed exactly
- Correctness: Normal CDF via scipy.special.ndtr, KS statistic via scipy.stats.kstest
- Observability: Window coverage failures state the required zero count and height
- Maintainability: Samples travel as pandas DataFrames, reports as pydantic models

Error Handling: raise_and_propagate
- CoverageError when the zero table does not reach the window
- DegenerateSampleError for empty samples, too few pairs or zero variance
"""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy import stats
from scipy.special import ndtr

from zeta_fluctuations.core.arithmetic import PrimeSieve, s_x, s_x_weighted
from zeta_fluctuations.core.counting import count_zeros, s_of_t
from zeta_fluctuations.core.predictor import PredictedGrid, predicted_grid, solve_t
from zeta_fluctuations.data.schema import DirichletParams, OffsetSpec, WindowSpec
from zeta_fluctuations.data.zero_table import ZeroTable
from zeta_fluctuations.errors import CoverageError, DegenerateSampleError, DomainError
from zeta_fluctuations.statistics.gaussian_oracle import (
    gauss_moment,
    gaussian_joint_moment_real,
    s_moment_constant,
)
from zeta_fluctuations.statistics.reports import CovarianceReport, MomentReport, MomentRow

logger = logging.getLogger(__name__)

S_GRID: tuple[float, ...] = tuple(-3.0 + 0.5 * i for i in range(13))
DEFAULT_ORDERS: tuple[int, ...] = tuple(range(9))
MIN_PAIRS = 1000
MAX_JOINT_ORDER = 6


def _require_indices(table: ZeroTable, last: int) -> None:
    if last > len(table):
        height = float(solve_t(last + 1))
        raise CoverageError(
            f"window needs {last} zeros but the table holds {len(table)}; "
            f"compute or ingest zeros up to height >= {height:.3f}",
            required_height=height,
            required_count=last,
        )


def _require_height(table: ZeroTable, height: float) -> None:
    if height > table.max_height:
        raise CoverageError(
            f"evaluation points reach height {height:.6f} but the table is complete only "
            f"below {table.max_height:.6f}",
            required_height=height,
        )


def _window_grid(w: WindowSpec, xi: float = 0.0) -> PredictedGrid:
    return predicted_grid(w.first, w.last, xi=xi)


def sample_indices(w: WindowSpec, table: ZeroTable | None = None) -> NDArray[np.int64]:
    """
    Every atom of the uniform index on I_N, i.e. N, N+1, ..., N+H-1.

    Raises:
        CoverageError: If table is given and holds fewer than N+H-1 zeros
    """
    if table is not None:
        _require_indices(table, w.last)
    return w.indices()


def fluctuations(
    table: ZeroTable, w: WindowSpec, grid: PredictedGrid | None = None
) -> pd.DataFrame:
    """
    Normalised fluctuations f_k = (γ_k - t_k)/σ_k over the window.

    Args:
        table: Zero table holding at least N+H-1 zeros
        w: Sampling window
        grid: Predicted grid over the window (computed when omitted)

    Returns:
        DataFrame with columns k, gamma, t, sigma, f

    Raises:
        CoverageError: If the table is too short
    """
    k = sample_indices(w, table)
    if grid is None:
        grid = _window_grid(w)
    elif grid.k.shape != k.shape or not np.array_equal(grid.k, k):
        raise ValueError("predicted grid does not match the sampling window")
    gamma = table.gammas(k)
    f = (gamma - grid.t) / grid.sigma
    return pd.DataFrame({"k": k, "gamma": gamma, "t": grid.t, "sigma": grid.sigma, "f": f})


def x_samples(table: ZeroTable, w: WindowSpec, xi: float = 0.0) -> pd.DataFrame:
    """
    Rescaled S at the evaluation points: X_k = √2 π S(t_k + ξσ_k)/√(log log t_k).

    At ξ = 0 the point t_k solves M(t_k) = k - 1/2, so S(t_k) = N(t_k) - k + 1/2 is always a
    half-integer and X lives on a lattice: its variance stays near 2π²·(1/4)/log log t and
    its kurtosis far below 3. Gaussian comparisons of X use ξ = ±1.

    Returns:
        DataFrame with columns k, t, g, S, X

    Raises:
        CoverageError: If some t_k + ξσ_k lies above table.max_height
    """
    grid = _window_grid(w, xi)
    g = grid.evaluation_points
    _require_height(table, float(g.max()))
    s = np.asarray(s_of_t(table, g))
    loglog = np.log(np.log(grid.t))
    x = math.sqrt(2.0) * math.pi * s / np.sqrt(loglog)
    return pd.DataFrame({"k": grid.k, "t": grid.t, "g": g, "S": s, "X": x})


def _as_sample(samples: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise DegenerateSampleError("empty sample")
    return arr


def empirical_cdf_vs_gaussian(
    samples: ArrayLike, s_grid: Sequence[float] = S_GRID, name: str = "sample"
) -> MomentReport:
    """
    Empirical CDF against Φ on a fixed grid, plus the Kolmogorov–Smirnov distance.

    Raises:
        DegenerateSampleError: If samples is empty
    """
    arr = _as_sample(samples)
    ordered = np.sort(arr)
    grid = np.asarray(s_grid, dtype=np.float64)
    empirical = np.searchsorted(ordered, grid, side="right") / arr.size
    target = ndtr(grid)
    ks = stats.kstest(arr, "norm")
    rows = [
        MomentRow(kind="cdf", parameter=f"{s:g}", empirical=float(e), target=float(t))
        for s, e, t in zip(grid.tolist(), empirical.tolist(), target.tolist(), strict=True)
    ]
    return MomentReport(
        name=name,
        n_samples=int(arr.size),
        rows=rows,
        ks_statistic=float(ks.statistic),
        ks_pvalue=float(ks.pvalue),
    )


def moment_report(
    samples: ArrayLike, orders: Iterable[int] = DEFAULT_ORDERS, name: str = "sample"
) -> MomentReport:
    """E[sample^p] against the standard normal moment for each order p."""
    arr = _as_sample(samples)
    rows = [
        MomentRow(
            kind="moment",
            parameter=str(p),
            empirical=float(np.mean(arr**p)),
            target=float(gauss_moment(p)),
        )
        for p in orders
    ]
    return MomentReport(name=name, n_samples=int(arr.size), rows=rows)


def two_point_samples(
    table: ZeroTable,
    n: int,
    beta: float,
    theta: float = 1.0,
    offset: int | None = None,
    with_x: bool = False,
) -> pd.DataFrame:
    """
    Paired fluctuations (f_{k1}, f_{k2}) with k1 ∈ I_N and k2 = k1 + floor((log N)^β).

    Args:
        table: Zero table
        n: Base index N
        beta: Offset exponent β > 0
        theta: Window exponent (1 reproduces k1 ∈ [N, 2N - 1])
        offset: Explicit offset overriding floor((log N)^β)
        with_x: Also attach X at t_{k1} and t_{k2} (ξ = 0)

    Returns:
        DataFrame with columns k1, k2, f1, f2 (and X1, X2)

    Raises:
        CoverageError: If k2 runs past the table
    """
    spec = OffsetSpec(beta=beta)
    u = spec.offset(n) if offset is None else offset
    if u < 0:
        raise DomainError(f"offset must be >= 0, got {u}")
    w = WindowSpec(n=n, theta=theta)
    _require_indices(table, w.last + u)

    grid = predicted_grid(w.first, w.last + u)
    f = (table.gammas(grid.k) - grid.t) / grid.sigma
    h = w.h
    frame = pd.DataFrame(
        {
            "k1": grid.k[:h],
            "k2": grid.k[u : u + h],
            "f1": f[:h],
            "f2": f[u : u + h],
        }
    )
    if with_x:
        _require_height(table, float(grid.t[-1]))
        x = math.sqrt(2.0) * math.pi * np.asarray(s_of_t(table, grid.t))
        x = x / np.sqrt(np.log(np.log(grid.t)))
        frame["X1"] = x[:h]
        frame["X2"] = x[u : u + h]
    frame.attrs.update({"n": n, "beta": beta, "offset": u, "theta": theta})
    return frame


def _pearson(a: NDArray[np.float64], b: NDArray[np.float64]) -> float:
    if np.std(a) == 0.0 or np.std(b) == 0.0:
        raise DegenerateSampleError("zero variance in paired sample")
    return float(np.clip(np.corrcoef(a, b)[0, 1], -1.0, 1.0))


def covariance_report(
    pairs: pd.DataFrame, beta: float, min_pairs: int = MIN_PAIRS
) -> CovarianceReport:
    """
    Pearson correlation and raw product moment of paired fluctuations, target (1 - β)₊.

    Raises:
        DegenerateSampleError: If fewer than min_pairs pairs or a side has zero variance
    """
    if len(pairs) < min_pairs:
        raise DegenerateSampleError(f"need >= {min_pairs} pairs, got {len(pairs)}")
    f1 = pairs["f1"].to_numpy(dtype=np.float64)
    f2 = pairs["f2"].to_numpy(dtype=np.float64)
    corr_x = None
    product_x = None
    if "X1" in pairs and "X2" in pairs:
        x1 = pairs["X1"].to_numpy(dtype=np.float64)
        x2 = pairs["X2"].to_numpy(dtype=np.float64)
        corr_x = _pearson(x1, x2)
        product_x = float(np.mean(x1 * x2))
    offset = int(pairs.attrs.get("offset", int((pairs["k2"] - pairs["k1"]).iloc[0])))
    return CovarianceReport(
        beta=beta,
        offset=offset,
        n_pairs=len(pairs),
        corr_f=_pearson(f1, f2),
        product_moment_f=float(np.mean(f1 * f2)),
        corr_x=corr_x,
        product_moment_x=product_x,
    )


def joint_moment_report(
    pairs: pd.DataFrame, orders: Iterable[tuple[int, int]], beta: float
) -> MomentReport:
    """
    E[f1^a f2^b] against the bivariate Gaussian moment at ρ = (1 - β)₊.

    Raises:
        DomainError: If a or b is negative or a + b > 6
        DegenerateSampleError: If pairs is empty
    """
    if len(pairs) == 0:
        raise DegenerateSampleError("empty paired sample")
    rho = max(1.0 - beta, 0.0)
    f1 = pairs["f1"].to_numpy(dtype=np.float64)
    f2 = pairs["f2"].to_numpy(dtype=np.float64)
    rows = []
    for a, b in orders:
        if a < 0 or b < 0 or a + b > MAX_JOINT_ORDER:
            raise DomainError(f"joint order needs a, b >= 0 and a+b <= 6, got ({a}, {b})")
        rows.append(
            MomentRow(
                kind="joint_moment",
                parameter=f"{a},{b}",
                empirical=float(np.mean(f1**a * f2**b)),
                target=gaussian_joint_moment_real(a, b, rho),
            )
        )
    return MomentReport(name=f"f1,f2(beta={beta:g})", n_samples=len(pairs), rows=rows)


@dataclass(frozen=True)
class CountingEquivalence:
    """Both sides of |{k : γ_k > t_k + ξσ_k}| = |{k : N(t_k + ξσ_k) <= k - 1/2}| over I_N."""

    xi: float
    above: int
    undercounted: int
    window_size: int

    @property
    def holds(self) -> bool:
        return self.above == self.undercounted

    @property
    def probability(self) -> float:
        """P{f^(N) > ξ} as an exact frequency."""
        return self.above / self.window_size


def counting_equivalence(table: ZeroTable, w: WindowSpec, xi: float = 0.0) -> CountingEquivalence:
    """
    Count both sides of the zero-counting reduction at offset ξ.

    Raises:
        CoverageError: If the window or its evaluation points exceed the table
    """
    k = sample_indices(w, table)
    grid = _window_grid(w, xi)
    g = grid.evaluation_points
    _require_height(table, float(g.max()))
    above = int(np.count_nonzero(table.gammas(k) > g))
    n_at_g = np.asarray(count_zeros(table, g))
    undercounted = int(np.count_nonzero(n_at_g <= k - 0.5))
    return CountingEquivalence(xi=xi, above=above, undercounted=undercounted, window_size=w.h)


def s_moment_report(
    table: ZeroTable, w: WindowSpec, xi: float = 0.0, n_max: int = 4
) -> MomentReport:
    """
    Empirical E[S(g_k)^{2n}/(log log t_k)^n] against (2n)!/((2π)^{2n} n!) for n = 1..n_max.
    """
    frame = x_samples(table, w, xi)
    s = frame["S"].to_numpy()
    loglog = np.log(np.log(frame["t"].to_numpy()))
    rows = [
        MomentRow(
            kind="s_moment",
            parameter=str(2 * n),
            empirical=float(np.mean(s ** (2 * n) / loglog**n)),
            target=s_moment_constant(n),
        )
        for n in range(1, n_max + 1)
    ]
    return MomentReport(name=f"S(xi={xi:g})", n_samples=len(frame), rows=rows)


def x_odd_moment_trend(
    table: ZeroTable,
    ns: Sequence[int],
    theta: float = 1.0,
    p: int = 3,
    xi: float = 0.0,
) -> pd.DataFrame:
    """
    Odd moment E[X^p] across base indices N (typically dyadic).

    Returns:
        DataFrame with columns n, h, moment, abs_moment
    """
    if p % 2 == 0:
        raise DomainError(f"odd moment order expected, got {p}")
    records = []
    for n in ns:
        w = WindowSpec(n=n, theta=theta)
        x = x_samples(table, w, xi)["X"].to_numpy()
        m = float(np.mean(x**p))
        records.append({"n": n, "h": w.h, "moment": m, "abs_moment": abs(m)})
        logger.debug("E[X^%d] at N=%d (H=%d): %.6f", p, n, w.h, m)
    return pd.DataFrame.from_records(records)


@dataclass(frozen=True)
class SelbergComparison:
    """S at the evaluation points next to S_x and the smoothed proxy."""

    frame: pd.DataFrame
    x: float

    @property
    def variance_ratio(self) -> float:
        """Var(S - S_x)/Var(S)."""
        s = self.frame["S"].to_numpy()
        var_s = float(np.var(s))
        if var_s == 0.0:
            raise DegenerateSampleError("S has zero variance over the window")
        return float(np.var(s - self.frame["S_x"].to_numpy())) / var_s

    @property
    def weighted_variance_ratio(self) -> float:
        s = self.frame["S"].to_numpy()
        return float(np.var(s - self.frame["S_x_weighted"].to_numpy())) / float(np.var(s))


def selberg_comparison(
    table: ZeroTable,
    w: WindowSpec,
    x: float,
    xi: float = 0.0,
    sieve: PrimeSieve | None = None,
) -> SelbergComparison:
    """
    Compare S(g_k) with S_x(g_k) and the Λ_x-weighted proxy over the window.

    Returns:
        SelbergComparison with frame columns k, t, S, S_x, S_x_weighted

    Raises:
        SieveTooSmallError: If a supplied sieve stops below x³
        CoverageError: If the evaluation points exceed the table
    """
    params = DirichletParams(x=x)
    if sieve is None:
        sieve = PrimeSieve(params.prime_cutoff)
    frame = x_samples(table, w, xi)
    g = frame["g"].to_numpy()
    out = pd.DataFrame(
        {
            "k": frame["k"],
            "t": g,
            "S": frame["S"],
            "S_x": np.asarray(s_x(g, params, sieve)),
            "S_x_weighted": np.asarray(s_x_weighted(g, x, sieve)) if x >= 2.0 else np.nan,
        }
    )
    return SelbergComparison(frame=out, x=x)
