"""
Exponential sums over the evaluation points g_k, van der Corput bounds and prime phase sums.

SLOs:
- Correctness: every sum is evaluated directly with Neumaier-compensated accumulation
- Correctness: the van der Corput constant is fitted from the battery and reported, never assumed
- Observability: Battery rows carry |sum|, bound, λ, κ and their ratio
- Maintainability: Deterministic given the seed (numpy Generator)

Error Handling: raise_and_propagate
- DomainError for λ <= 0, κ < 1, H > K, non-prime input or equal prime multisets
- SieveTooSmallError if a supplied sieve stops below the summation cutoff

Phase convention: a sum Σ e^{iθ g_k} is Σ e(f(k)) with f = θ g/(2π), so λ <= |f''| <= κλ is
taken for f'' = θ g''/(2π) on [K, 2K]. |g''| decreases on that interval, so the endpoint
values bound it, widened by a 10% margin.
"""

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from zeta_fluctuations.core._numba_kernel import _compensated_exp_sum_numba
from zeta_fluctuations.core.arithmetic import PrimeSieve, is_prime
from zeta_fluctuations.core.predictor import GFunction
from zeta_fluctuations.errors import DomainError

logger = logging.getLogger(__name__)

ENDPOINT_MARGIN = 1.1
BATTERY_KS: tuple[int, ...] = (1_000, 10_000, 100_000)
BATTERY_Y = 30
CONSTANT_CEILING = 10.0


def _exp_sum(phases: NDArray[np.float64], weights: NDArray[np.float64] | None = None) -> complex:
    ph = np.ascontiguousarray(phases, dtype=np.float64)
    w = np.ones_like(ph) if weights is None else np.ascontiguousarray(weights, dtype=np.float64)
    re, im = _compensated_exp_sum_numba(ph, w)
    return complex(re, im)


def _g_values(g: GFunction, k_lo: int, k_hi: int) -> NDArray[np.float64]:
    """g(k) for k_lo <= k <= k_hi."""
    return np.asarray(g(np.arange(k_lo, k_hi + 1, dtype=np.float64)), dtype=np.float64)


def direct_exp_sum(theta: float, k: int, h: int, g: GFunction | None = None) -> complex:
    """
    Σ_{j=K}^{K+H-1} exp(iθ g_j), summed directly.

    Args:
        theta: Frequency θ
        k: First index K
        h: Number of terms H >= 1
        g: Evaluation-point function (ξ = 0, counting constant 11/8 when omitted)

    Returns:
        The complex sum
    """
    if h < 1:
        raise DomainError(f"H must be >= 1, got {h}")
    g = g or GFunction()
    return _exp_sum(theta * _g_values(g, k, k + h - 1))


def vdc_bound(lam: float, kappa: float, interval_len: int) -> float:
    """
    van der Corput second-derivative bound κ|I|λ^{1/2} + λ^{-1/2}, absolute constant 1.

    Raises:
        DomainError: If λ <= 0 or κ < 1
    """
    if not lam > 0.0:
        raise DomainError(f"lambda must be > 0, got {lam}")
    if kappa < 1.0:
        raise DomainError(f"kappa must be >= 1, got {kappa}")
    return kappa * interval_len * math.sqrt(lam) + 1.0 / math.sqrt(lam)


def _curvature_bounds(theta: float, k: int, g: GFunction) -> tuple[float, float]:
    """(λ, κ) with λ <= |θ g''/(2π)| <= κλ on [K, 2K]."""
    if k < 1_000:
        raise DomainError(f"curvature bounds need K >= 1000, got {k}")
    hi = abs(g.second_derivative(float(k)).finite_difference)
    lo = abs(g.second_derivative(float(2 * k)).finite_difference)
    scale = abs(theta) / (2.0 * math.pi)
    lam = scale * lo / ENDPOINT_MARGIN
    kappa = max((scale * hi * ENDPOINT_MARGIN) / lam, 1.0)
    return lam, kappa


def tuple_frequency(primes: Sequence[int], split: int) -> float:
    """
    θ = log(p_{l+1} ⋯ p_{2n}) - log(p_1 ⋯ p_l), so (2, 3) split after 2 gives log(3/2).

    Raises:
        DomainError: If an entry is not prime, the split is out of range, or both sides
            are the same multiset
    """
    bad = [p for p in primes if not is_prime(int(p))]
    if bad:
        raise DomainError(f"not prime: {bad}")
    if not 0 <= split <= len(primes):
        raise DomainError(f"split must lie in 0..{len(primes)}, got {split}")
    left, right = sorted(primes[:split]), sorted(primes[split:])
    if left == right:
        raise DomainError(f"equal prime multisets {left} on both sides give θ = 0")
    return math.fsum(math.log(p) for p in right) - math.fsum(math.log(p) for p in left)


def lambda_kappa_for_prime_tuple(
    primes: Sequence[int], split: int, k: int, g: GFunction | None = None
) -> tuple[float, float, float]:
    """
    Curvature bounds for the phase θ g(x), θ from a prime tuple.

    Returns:
        (λ, κ, θ)

    Raises:
        DomainError: As tuple_frequency, or K < 1000
    """
    theta = tuple_frequency(primes, split)
    lam, kappa = _curvature_bounds(theta, k, g or GFunction())
    return lam, kappa, theta


def two_point_phase_sum(
    p1: int, p2: int, k: int, h: int, u: int, g: GFunction | None = None
) -> complex:
    """
    Σ_{j=K}^{K+H-1} exp(-i(g_j log p1 - g_{j+u} log p2)).

    Raises:
        DomainError: If p1 == p2, u < 0, H < 1 or an argument is not prime
    """
    if p1 == p2:
        raise DomainError(f"p1 and p2 must differ, got {p1}")
    if not (is_prime(p1) and is_prime(p2)):
        raise DomainError(f"not prime: {(p1, p2)}")
    if u < 0:
        raise DomainError(f"offset u must be >= 0, got {u}")
    if h < 1:
        raise DomainError(f"H must be >= 1, got {h}")
    values = _g_values(g or GFunction(), k, k + h - 1 + u)
    return _exp_sum(_two_point_phases(values, p1, p2, h, u))


def _two_point_phases(
    values: NDArray[np.float64], p1: int, p2: int, h: int, u: int
) -> NDArray[np.float64]:
    return -(values[:h] * math.log(p1) - values[u : u + h] * math.log(p2))


def _sieve_for(x: float, sieve: PrimeSieve | None) -> PrimeSieve:
    if sieve is None:
        return PrimeSieve(math.floor(x))
    sieve.require(x)
    return sieve


def prime_phase_sum(x: float, s: float, sieve: PrimeSieve | None = None) -> complex:
    """
    Σ_{p <= x} p^{is}/p.

    Raises:
        DomainError: If x < 3
        SieveTooSmallError: If sieve.limit < x
    """
    if x < 3.0:
        raise DomainError(f"x must be >= 3, got {x}")
    primes = _sieve_for(x, sieve).upto(x).astype(np.float64)
    return _exp_sum(s * np.log(primes), 1.0 / primes)


def mertens_sums(y: float, sieve: PrimeSieve | None = None) -> tuple[float, float]:
    """
    (Σ_{p<y} log p/p, Σ_{p<y} 1/p), p strictly below y.

    Raises:
        DomainError: If y < 2
    """
    if y < 2.0:
        raise DomainError(f"y must be >= 2, got {y}")
    primes = _sieve_for(y, sieve).upto(y, inclusive=False).tolist()
    return (
        math.fsum(math.log(p) / p for p in primes),
        math.fsum(1.0 / p for p in primes),
    )


class ExpSumExperiment(BaseModel):
    """One directly evaluated exponential sum next to its van der Corput bound."""

    experiment_id: str
    kind: Literal["prime_tuple", "two_point"]
    k: int = Field(ge=1, description="First index K")
    h: int = Field(ge=1, description="Number of terms H (H <= K)")
    theta: float = Field(description="Frequency of the phase θ g")
    primes: str = Field(description="Prime tuple, comma separated")
    split: int = Field(ge=0)
    offset: int = Field(default=0, ge=0)
    abs_sum: float = Field(ge=0.0)
    lam: float = Field(gt=0.0)
    kappa: float = Field(ge=1.0)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def validate_h_le_k(self) -> "ExpSumExperiment":
        if self.h > self.k:
            raise ValueError(f"H ({self.h}) must be <= K ({self.k})")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def bound(self) -> float:
        return vdc_bound(self.lam, self.kappa, self.h)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def ratio(self) -> float:
        """|sum| / bound."""
        return self.abs_sum / self.bound


@dataclass(frozen=True)
class Battery:
    """Experiment battery with its fitted constant C = max |sum|/bound."""

    frame: pd.DataFrame
    fitted_constant: float

    @property
    def within_ceiling(self) -> bool:
        return self.fitted_constant <= CONSTANT_CEILING


def _check_h(k: int, h: int) -> None:
    if h > k:
        raise DomainError(f"H <= K required, got K={k}, H={h}")


def run_battery(
    seed: int = 0,
    ks: Sequence[int] = BATTERY_KS,
    per_k: int = 40,
    y: int = BATTERY_Y,
    h: int | None = None,
    primes: Sequence[int] | None = None,
    xi: float = 0.0,
) -> Battery:
    """
    Random prime-tuple and two-point experiments for each K, and the fitted constant.

    Args:
        seed: Seed of the numpy Generator
        ks: First indices K (each >= 1000)
        per_k: Experiments per K; three quarters prime tuples, the rest two-point sums
        y: Primes are drawn from p <= y
        h: Fixed H for every experiment (random in [K/10, K] when omitted)
        primes: Fixed prime tuple (even length) used for every prime-tuple experiment
        xi: Offset ξ of the evaluation points

    Returns:
        Battery with one row per experiment

    Raises:
        DomainError: If H > K, or a fixed tuple is invalid
    """
    rng = np.random.default_rng(seed)
    pool = PrimeSieve(y).primes.tolist()
    g = GFunction(xi=xi)
    if primes is not None:
        tuple_frequency(list(primes), len(primes) // 2)

    experiments: list[ExpSumExperiment] = []
    for k in ks:
        if h is not None:
            _check_h(k, h)
        values = _g_values(g, k, 2 * k + 64)
        for j in range(per_k):
            hh = h if h is not None else int(rng.integers(max(1, k // 10), k + 1))
            if j % 4 != 3:
                experiments.append(_tuple_experiment(rng, pool, primes, k, hh, g, values, j))
            else:
                experiments.append(_two_point_experiment(rng, pool, k, hh, g, values, j))
        logger.info("Battery K=%d: %d experiments", k, per_k)

    frame = pd.DataFrame([e.model_dump() for e in experiments])
    if len(frame):
        half = frame["primes"].str.count(",").add(1).floordiv(2).clip(lower=1)
        frame["factorization_ok"] = frame["theta"].abs() >= float(y) ** (-half)
    fitted = float(frame["ratio"].max()) if len(frame) else 0.0
    logger.info("Battery fitted constant C = %.4f over %d experiments", fitted, len(frame))
    return Battery(frame=frame, fitted_constant=fitted)


def _tuple_experiment(
    rng: np.random.Generator,
    pool: list[int],
    fixed: Sequence[int] | None,
    k: int,
    h: int,
    g: GFunction,
    values: NDArray[np.float64],
    j: int,
) -> ExpSumExperiment:
    while True:
        if fixed is not None:
            tup = [int(p) for p in fixed]
        else:
            n = int(rng.integers(1, 3))
            tup = [int(p) for p in rng.choice(pool, size=2 * n)]
        split = len(tup) // 2
        if sorted(tup[:split]) != sorted(tup[split:]):
            break
    lam, kappa, theta = lambda_kappa_for_prime_tuple(tup, split, k, g)
    total = _exp_sum(theta * values[:h])
    return ExpSumExperiment(
        experiment_id=f"K{k}-{j:03d}",
        kind="prime_tuple",
        k=k,
        h=h,
        theta=theta,
        primes=",".join(map(str, tup)),
        split=split,
        abs_sum=abs(total),
        lam=lam,
        kappa=kappa,
    )


def _two_point_experiment(
    rng: np.random.Generator,
    pool: list[int],
    k: int,
    h: int,
    g: GFunction,
    values: NDArray[np.float64],
    j: int,
) -> ExpSumExperiment:
    p1, p2 = (int(p) for p in rng.choice(pool, size=2, replace=False))
    u = math.floor(math.log(k))
    theta = math.log(p2) - math.log(p1)
    lam, kappa = _curvature_bounds(theta, k, g)
    total = _exp_sum(_two_point_phases(values, p1, p2, h, u))
    return ExpSumExperiment(
        experiment_id=f"K{k}-{j:03d}",
        kind="two_point",
        k=k,
        h=h,
        theta=theta,
        primes=f"{p1},{p2}",
        split=1,
        offset=u,
        abs_sum=abs(total),
        lam=lam,
        kappa=kappa,
    )


def phase_sum_trend(
    betas: Sequence[float] = (0.5, 2.0),
    cutoffs: Sequence[float] = (1e4, 1e5, 1e6),
) -> pd.DataFrame:
    """
    Re Σ_{p <= x} p^{is}/p / log log x at s = 2π(log x)^{β-1}, against (1 - β)₊.

    Returns:
        DataFrame with columns beta, x, s, re_sum, ratio, target, distance
    """
    sieve = PrimeSieve(math.floor(max(cutoffs)))
    records = []
    for beta in betas:
        for x in cutoffs:
            s = 2.0 * math.pi * math.log(x) ** (beta - 1.0)
            total = prime_phase_sum(x, s, sieve)
            ratio = total.real / math.log(math.log(x))
            target = max(1.0 - beta, 0.0)
            records.append(
                {"beta": beta, "x": x, "s": s, "re_sum": total.real, "ratio": ratio,
                 "target": target, "distance": abs(ratio - target)}
            )
    return pd.DataFrame.from_records(records)


@dataclass(frozen=True)
class FactorizationCheck:
    """Minimum |θ| over every pair of distinct n-element prime multisets with p <= y."""

    y: int
    n: int
    pairs_checked: int
    min_abs_theta: float

    @property
    def bound(self) -> float:
        return float(self.y) ** (-self.n)

    @property
    def holds(self) -> bool:
        return self.min_abs_theta >= self.bound


def unique_factorization_check(y: int, n: int) -> FactorizationCheck:
    """
    Exhaustively check |log(p_1⋯p_n) - log(p_{n+1}⋯p_{2n})| >= 1/y^n for p_i <= y.

    Distinct multisets have distinct products, so the gap between products is at least one.
    """
    if y < 2 or n < 1:
        raise DomainError(f"need y >= 2 and n >= 1, got y={y}, n={n}")
    pool = PrimeSieve(y).primes.tolist()
    logs = sorted(
        math.fsum(math.log(p) for p in combo)
        for combo in itertools.combinations_with_replacement(pool, n)
    )
    gaps = np.diff(np.array(logs))
    count = len(logs) * (len(logs) - 1) // 2
    min_theta = float(gaps.min()) if gaps.size else math.inf
    return FactorizationCheck(y=y, n=n, pairs_checked=count, min_abs_theta=min_theta)
