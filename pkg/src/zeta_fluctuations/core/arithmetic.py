"""
Prime sieve, von Mangoldt weights Λ(n), Λ_x(n) and the Dirichlet polynomials S_x(t).

SLOs:
- Correctness: 100% (sieve of Eratosthenes on a boolean numpy mask, no probabilistic tests)
- Correctness: S_x summed directly over the sieve with compensated summation
- Observability: Λ_x values outside [0, Λ(n)] are reported as BoundFindingWarning, never raised
- Maintainability: Summation kernels shared with core/_numba_kernel.py

Error Handling: raise_and_propagate
- SieveTooSmallError if the sieve does not reach the x³ cutoff
- DomainError for n < 1 or x < 2 in Λ_x
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from zeta_fluctuations.core._numba_kernel import _sine_sum_numba
from zeta_fluctuations.data.schema import DirichletParams
from zeta_fluctuations.errors import BoundFindingWarning, DomainError, SieveTooSmallError

logger = logging.getLogger(__name__)


def sieve_mask(limit: int) -> NDArray[np.bool_]:
    """Boolean mask is_prime[0..limit]."""
    is_prime = np.ones(max(limit, 1) + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return is_prime[: limit + 1]


@dataclass(frozen=True)
class PrimeSieve:
    """
    All primes up to `limit`, in ascending order.

    Attributes:
        limit: Inclusive upper bound of the sieve
        primes: Ascending primes <= limit (read-only)
    """

    limit: int
    primes: NDArray[np.int64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.limit < 0:
            raise DomainError(f"sieve limit must be >= 0, got {self.limit}")
        primes = np.flatnonzero(sieve_mask(self.limit)).astype(np.int64)
        primes.setflags(write=False)
        object.__setattr__(self, "primes", primes)
        logger.debug("Sieved %d primes up to %d", primes.size, self.limit)

    def __len__(self) -> int:
        return int(self.primes.shape[0])

    def __contains__(self, n: object) -> bool:
        if not isinstance(n, (int, np.integer)) or n < 2 or n > self.limit:
            return False
        i = int(np.searchsorted(self.primes, n))
        return i < len(self) and int(self.primes[i]) == int(n)

    def upto(self, bound: float, inclusive: bool = True) -> NDArray[np.int64]:
        """Primes p <= bound (or p < bound)."""
        side = "right" if inclusive else "left"
        return self.primes[: int(np.searchsorted(self.primes, bound, side=side))]

    def require(self, cutoff: float) -> None:
        if self.limit < math.floor(cutoff):
            raise SieveTooSmallError(
                f"sieve limit {self.limit} below required cutoff {math.floor(cutoff)}"
            )

    @cached_property
    def _von_mangoldt(self) -> NDArray[np.float64]:
        lam = np.zeros(self.limit + 1, dtype=np.float64)
        for p in self.primes.tolist():
            log_p = math.log(p)
            power = p
            while power <= self.limit:
                lam[power] = log_p
                power *= p
        lam.setflags(write=False)
        return lam

    def von_mangoldt(self) -> NDArray[np.float64]:
        """Λ(n) for 0 <= n <= limit (entry 0 is 0)."""
        return self._von_mangoldt


def _least_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and _least_factor(n) == n


def lambda_(n: int) -> float:
    """
    von Mangoldt Λ(n): log p if n = p^m, else 0.

    Raises:
        DomainError: If n < 1
    """
    if n < 1:
        raise DomainError(f"Λ(n) requires n >= 1, got {n}")
    if n == 1:
        return 0.0
    p = _least_factor(n)
    m = n
    while m % p == 0:
        m //= p
    return math.log(p) if m == 1 else 0.0


def _smoothing_factor(n: NDArray[np.float64], x: float) -> NDArray[np.float64]:
    """Λ_x(n)/Λ(n): 1 on [1, x), the quadratic blend on [x, x²), the tail on [x², x³]."""
    log_x = math.log(x)
    log_n = np.log(n)
    lower = (3.0 * log_x - log_n) ** 2
    middle = (lower - 2.0 * (2.0 * log_x - log_n) ** 2) / (2.0 * log_x**2)
    tail = lower / (2.0 * log_x**2)
    cube = x**3 * (1.0 + 1e-12)
    return np.select(
        [n < x, n < x * x, n <= cube],
        [np.ones_like(log_n), middle, np.maximum(tail, 0.0)],
        default=0.0,
    )


def lambda_x(n: int, x: float) -> float:
    """
    Smoothed weight Λ_x(n).

    Λ(n) for n < x, Λ(n)(log²(x³/n) - 2 log²(x²/n))/(2 log²x) for x <= n < x²,
    Λ(n) log²(x³/n)/(2 log²x) for x² <= n <= x³ and 0 above x³. The branches agree at
    n = x and n = x², so the half-open split is immaterial.

    Raises:
        DomainError: If n < 1 or x < 2
    """
    if x < 2.0:
        raise DomainError(f"Λ_x requires x >= 2, got {x}")
    lam = lambda_(n)
    if lam == 0.0:
        return 0.0
    return lam * float(_smoothing_factor(np.array([float(n)]), x)[0])


def lambda_x_array(sieve: PrimeSieve, x: float) -> NDArray[np.float64]:
    """Λ_x(n) for 0 <= n <= sieve.limit."""
    if x < 2.0:
        raise DomainError(f"Λ_x requires x >= 2, got {x}")
    lam = sieve.von_mangoldt()
    out = np.zeros_like(lam)
    support = np.flatnonzero(lam)
    out[support] = lam[support] * _smoothing_factor(support.astype(np.float64), x)
    return out


def check_lambda_x_bound(sieve: PrimeSieve, xs: ArrayLike) -> list[tuple[float, int, float]]:
    """
    Check 0 <= Λ_x(n) <= Λ(n) + 1e-12 for every n <= sieve.limit and each x.

    Violations are findings (the bound is not a theorem): they are logged, emitted as
    BoundFindingWarning and returned as (x, n, Λ_x(n) - Λ(n)) triples.
    """
    lam = sieve.von_mangoldt()
    findings: list[tuple[float, int, float]] = []
    for x in np.atleast_1d(np.asarray(xs, dtype=np.float64)).tolist():
        weights = lambda_x_array(sieve, x)
        excess = weights - lam
        bad = np.flatnonzero((excess > 1e-12) | (weights < -1e-12))
        for n in bad.tolist():
            findings.append((x, n, float(excess[n])))
    if findings:
        logger.warning("Λ_x bound violated at %d (x, n) pairs", len(findings))
        warnings.warn(
            f"Λ_x(n) outside [0, Λ(n)] at {len(findings)} points; first {findings[0]}",
            BoundFindingWarning,
            stacklevel=2,
        )
    return findings


def _as_points(t: ArrayLike) -> tuple[NDArray[np.float64], bool]:
    arr = np.asarray(t, dtype=np.float64)
    return np.ascontiguousarray(np.atleast_1d(arr)), arr.ndim == 0


def s_x(t: ArrayLike, x: float | DirichletParams, sieve: PrimeSieve) -> NDArray[np.float64] | float:
    """
    Dirichlet-polynomial proxy S_x(t) = -(1/π) Σ_{p <= x³} sin(t log p)/√p.

    Args:
        t: Evaluation point(s)
        x: Cutoff parameter (or DirichletParams)
        sieve: PrimeSieve with limit >= x³

    Returns:
        S_x(t), float for scalar t

    Raises:
        SieveTooSmallError: If sieve.limit < x³
    """
    params = x if isinstance(x, DirichletParams) else DirichletParams(x=x)
    cutoff = params.prime_cutoff
    sieve.require(cutoff)
    ts, scalar = _as_points(t)
    primes = sieve.upto(cutoff).astype(np.float64)
    if primes.size == 0:
        out = np.zeros_like(ts)
    else:
        out = -_sine_sum_numba(ts, np.log(primes), 1.0 / np.sqrt(primes)) / math.pi
    return float(out[0]) if scalar else out


def s_x_weighted(t: ArrayLike, x: float, sieve: PrimeSieve) -> NDArray[np.float64] | float:
    """
    Smoothed proxy -(1/π) Σ_{n <= x³} Λ_x(n) sin(t log n)/(√n log n) over prime powers n.

    Raises:
        SieveTooSmallError: If sieve.limit < x³
        DomainError: If x < 2
    """
    cutoff = DirichletParams(x=x).prime_cutoff
    sieve.require(cutoff)
    ts, scalar = _as_points(t)
    weights_all = lambda_x_array(sieve, x)[: cutoff + 1]
    n = np.flatnonzero(weights_all).astype(np.float64)
    if n.size == 0:
        out = np.zeros_like(ts)
    else:
        log_n = np.log(n)
        weights = weights_all[n.astype(np.int64)] / (np.sqrt(n) * log_n)
        out = -_sine_sum_numba(ts, log_n, weights) / math.pi
    return float(out[0]) if scalar else out
