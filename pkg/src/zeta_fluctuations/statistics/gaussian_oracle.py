"""
Exact Gaussian moment targets by brute-force Wick enumeration.

SLOs:
- Correctness: 100% (exact integer pairing counts, ρ applied last in floating point)
- Performance: Size guards keep every enumeration at or below 8! bijections or 11!! matchings
- Observability: Full type hints (mypy strict)
- Maintainability: Pure, stateless functions; safe for concurrent use

Error Handling: raise_and_propagate
- OracleSizeError when a request exceeds the enumeration guard
- DomainError for negative orders
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from zeta_fluctuations.errors import DomainError, OracleSizeError

MAX_GAUSS_ORDER = 40
MAX_S_MOMENT = 10
MAX_BIJECTION_SIDE = 8
MAX_COMPLEX_SLOTS = 16
MAX_REAL_SLOTS = 12


def gauss_moment(p: int) -> int:
    """
    E[Y^p] for a standard normal Y: (p-1)!! for even p, 0 for odd p.

    Raises:
        DomainError: If p < 0
        OracleSizeError: If p > 40
    """
    if p < 0:
        raise DomainError(f"moment order must be >= 0, got {p}")
    if p > MAX_GAUSS_ORDER:
        raise OracleSizeError(f"moment order {p} exceeds guard {MAX_GAUSS_ORDER}")
    if p % 2:
        return 0
    return math.prod(range(p - 1, 0, -2))


def s_moment_exact(n: int) -> Fraction:
    """(2n)!/n! as an exact rational; divide by (2π)^{2n} for the S-moment constant."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n > MAX_S_MOMENT:
        raise OracleSizeError(f"n = {n} exceeds guard {MAX_S_MOMENT}")
    return Fraction(math.factorial(2 * n), math.factorial(n))


def s_moment_constant(n: int) -> float:
    """
    Limiting E[S^{2n}]/(log log T)^n = (2n)!/((2π)^{2n} n!).

    Raises:
        OracleSizeError: If n > 10
    """
    return float(s_moment_exact(n)) / (2.0 * math.pi) ** (2 * n)


@dataclass(frozen=True)
class PairingCount:
    """n_k: number of bijections between unbarred and barred slots with exactly k cross pairs."""

    a1: int
    a2: int
    b1: int
    b2: int
    k: int
    n_k: int


def _check_complex_sizes(a1: int, a2: int, b1: int, b2: int) -> None:
    if min(a1, a2, b1, b2) < 0:
        raise DomainError(f"slot counts must be >= 0, got {(a1, a2, b1, b2)}")
    if a1 + a2 + b1 + b2 > MAX_COMPLEX_SLOTS:
        raise OracleSizeError(f"a1+a2+b1+b2 = {a1 + a2 + b1 + b2} exceeds {MAX_COMPLEX_SLOTS}")
    if a1 + b1 > MAX_BIJECTION_SIDE:
        raise OracleSizeError(f"a1+b1 = {a1 + b1} exceeds {MAX_BIJECTION_SIDE} (factorial cost)")


def pairing_counts(a1: int, a2: int, b1: int, b2: int) -> list[PairingCount]:
    """
    Cross-pair histogram over all bijections σ from {η₁ × a1, η₂ × b1} to {η̄₁ × a2, η̄₂ × b2}.

    Every one of the (a1+b1)! bijections is enumerated; a pair is cross when its indices differ.
    Empty when a1 + b1 != a2 + b2.

    Raises:
        OracleSizeError: If a1+b1 > 8 or a1+a2+b1+b2 > 16
    """
    _check_complex_sizes(a1, a2, b1, b2)
    if a1 + b1 != a2 + b2:
        return []
    unbarred = (1,) * a1 + (2,) * b1
    barred = (1,) * a2 + (2,) * b2
    hist: Counter[int] = Counter()
    for perm in itertools.permutations(barred):
        hist[sum(u != v for u, v in zip(unbarred, perm, strict=True))] += 1
    return [
        PairingCount(a1=a1, a2=a2, b1=b1, b2=b2, k=k, n_k=n)
        for k, n in sorted(hist.items())
    ]


def wick_bivariate(a1: int, a2: int, b1: int, b2: int, rho: float) -> float:
    """
    E[η₁^a1 η̄₁^a2 η₂^b1 η̄₂^b2] for standard complex Gaussians with E η₁η̄₂ = ρ.

    Args:
        a1, a2: Powers of η₁ and its conjugate
        b1, b2: Powers of η₂ and its conjugate
        rho: Cross covariance

    Returns:
        Σ_k n_k ρ^k, zero unless a1 + b1 = a2 + b2

    Raises:
        OracleSizeError: If the enumeration is too large
    """
    return float(sum(pc.n_k * rho**pc.k for pc in pairing_counts(a1, a2, b1, b2)))


def _matching_histogram(labels: tuple[int, ...]) -> Counter[int]:
    """Cross-pair histogram over all perfect matchings of `labels`."""
    if not labels:
        return Counter({0: 1})
    first, rest = labels[0], labels[1:]
    hist: Counter[int] = Counter()
    for i, partner in enumerate(rest):
        cross = int(first != partner)
        for k, n in _matching_histogram(rest[:i] + rest[i + 1 :]).items():
            hist[k + cross] += n
    return hist


def gaussian_joint_moment_real(a: int, b: int, rho: float) -> float:
    """
    E[Y₁^a Y₂^b] for a standard bivariate normal with correlation ρ, by Wick enumeration.

    Raises:
        DomainError: If a or b is negative
        OracleSizeError: If a + b > 12
    """
    if a < 0 or b < 0:
        raise DomainError(f"orders must be >= 0, got a={a}, b={b}")
    if a + b > MAX_REAL_SLOTS:
        raise OracleSizeError(f"a+b = {a + b} exceeds {MAX_REAL_SLOTS}")
    if (a + b) % 2:
        return 0.0
    hist = _matching_histogram((1,) * a + (2,) * b)
    return float(sum(n * rho**k for k, n in sorted(hist.items())))
