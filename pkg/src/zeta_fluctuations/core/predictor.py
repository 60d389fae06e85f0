"""
Predicted zero locations t_k, normalisations σ_k and the interpolating function g(x).

SLOs:
- Correctness: main_term(solve_t(k)) = k - 1/2 to the double-precision floor of t
- Correctness: safeguarded Newton never leaves the monotone branch t > 2π
- Observability: Full type hints (mypy strict)
- Maintainability: Pure functions, vectorised over numpy arrays

Error Handling: raise_and_propagate
- DomainError for σ(t) with t <= e, g(x) below its threshold x0, curvature below x = 1e3

Two counting constants are in play and are never mixed silently:
- COUNTING_CONSTANT_T = 7/8 defines t_k through main_term(t_k, 7/8) = k - 1/2
- COUNTING_CONSTANT_G = 11/8 defines g through main_term(t(x), 11/8) = x
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray

from zeta_fluctuations.errors import DomainError

COUNTING_CONSTANT_T = 7.0 / 8.0
COUNTING_CONSTANT_G = 11.0 / 8.0
TWO_PI = 2.0 * math.pi
_MAX_NEWTON_ITERATIONS = 200


def main_term(t: ArrayLike, c: float = COUNTING_CONSTANT_T) -> NDArray[np.float64] | float:
    """
    Smooth zero-counting term M(t) = (t/2π) log(t/2πe) + c.

    Args:
        t: Ordinate(s), t > 0
        c: Counting constant (7/8 for N(T), 11/8 for g)

    Returns:
        M(t), a float for scalar input and an array otherwise
    """
    arr = np.asarray(t, dtype=np.float64)
    if np.any(arr <= 0):
        raise DomainError("main_term requires t > 0")
    u = arr / TWO_PI
    value = u * (np.log(u) - 1.0) + c
    if value.ndim == 0:
        return float(value)
    return value


def invert_main_term(x: ArrayLike, c: float = COUNTING_CONSTANT_T) -> NDArray[np.float64] | float:
    """
    Solve main_term(t, c) = x for t on the increasing branch t > 2π.

    Newton iteration with derivative log(t/2π)/2π from t0 = 2πx/log(x+2) + 2πe, with a
    maintained bracket [lo, hi] and a bisection step whenever Newton would leave it.

    Raises:
        DomainError: If x <= c - 1 (below the branch minimum M(2π) = c - 1)
    """
    xs = np.asarray(x, dtype=np.float64)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    target = xs - c
    if np.any(~np.isfinite(xs)) or np.any(target <= -1.0):
        raise DomainError(f"main_term(t, {c}) = x requires x > {c - 1.0}")

    lo = np.full_like(xs, TWO_PI)
    hi = TWO_PI * math.e * (target + 2.0)
    k = np.maximum(xs, 1.0)
    t = TWO_PI * k / np.log(k + 2.0) + TWO_PI * math.e
    t = np.where((t > lo) & (t < hi), t, 0.5 * (lo + hi))

    for _ in range(_MAX_NEWTON_ITERATIONS):
        u = t / TWO_PI
        f = u * (np.log(u) - 1.0) - target
        lo = np.where(f < 0.0, t, lo)
        hi = np.where(f > 0.0, t, hi)
        slope = np.log(u) / TWO_PI
        with np.errstate(divide="ignore", invalid="ignore"):
            t_new = t - f / slope
        outside = ~((t_new > lo) & (t_new < hi)) | (f == 0.0)
        t_new = np.where(f == 0.0, t, np.where(outside, 0.5 * (lo + hi), t_new))
        done = np.abs(t_new - t) <= 2.0 * np.spacing(t)
        t = t_new
        if np.all(done):
            break

    if scalar:
        return float(t[0])
    return t


def solve_t(k: ArrayLike, c: float = COUNTING_CONSTANT_T) -> NDArray[np.float64] | float:
    """
    Predicted ordinate t_k: main_term(t_k, c) = k - 1/2, t_k > 2π.

    Args:
        k: Zero index (or array of indices), k >= 1
        c: Counting constant (7/8)

    Returns:
        t_k
    """
    ks = np.asarray(k, dtype=np.float64)
    if np.any(ks < 1):
        raise DomainError("solve_t requires k >= 1")
    return invert_main_term(ks - 0.5, c)


def sigma(t: ArrayLike) -> NDArray[np.float64] | float:
    """
    Normalisation σ = sqrt(2 log log t) / log t.

    Raises:
        DomainError: If t <= e (log log t <= 0)
    """
    arr = np.asarray(t, dtype=np.float64)
    if np.any(arr <= math.e):
        raise DomainError("sigma requires t > e")
    log_t = np.log(arr)
    value = np.sqrt(2.0 * np.log(log_t)) / log_t
    if value.ndim == 0:
        return float(value)
    return value


@dataclass(frozen=True)
class PredictedGrid:
    """
    Predicted ordinates t_k and normalisations σ_k for a contiguous index range.

    Attributes:
        k: Indices (1-based)
        t: Predicted ordinates t_k, strictly increasing
        sigma: σ_k computed from t_k
        xi: Offset ξ of the evaluation points g_k = t_k + ξσ_k
        counting_constant: Constant used to solve for t_k
    """

    k: NDArray[np.int64]
    t: NDArray[np.float64]
    sigma: NDArray[np.float64]
    xi: float = 0.0
    counting_constant: float = COUNTING_CONSTANT_T

    def __post_init__(self) -> None:
        for arr in (self.k, self.t, self.sigma):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return int(self.k.shape[0])

    @property
    def evaluation_points(self) -> NDArray[np.float64]:
        """g_k = t_k + ξσ_k."""
        return self.t + self.xi * self.sigma

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"k": self.k, "t_k": self.t, "sigma_k": self.sigma})

    def to_csv(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False, float_format="%.12f")


def predicted_grid(
    k_lo: int, k_hi: int, xi: float = 0.0, c: float = COUNTING_CONSTANT_T
) -> PredictedGrid:
    """
    Build the PredictedGrid for k_lo <= k <= k_hi.

    Raises:
        DomainError: If k_lo < 1 or k_hi < k_lo
    """
    if k_lo < 1 or k_hi < k_lo:
        raise DomainError(f"need 1 <= k_lo <= k_hi, got k_lo={k_lo}, k_hi={k_hi}")
    k = np.arange(k_lo, k_hi + 1, dtype=np.int64)
    t = np.asarray(solve_t(k, c), dtype=np.float64)
    return PredictedGrid(k=k, t=t, sigma=np.asarray(sigma(t)), xi=xi, counting_constant=c)


@dataclass(frozen=True)
class Curvature:
    """Finite-difference g''(x) next to its asymptotic and exact forms."""

    x: float
    finite_difference: float
    asymptotic: float
    t_second_derivative: float

    @property
    def ratio(self) -> float:
        """finite_difference / asymptotic."""
        return self.finite_difference / self.asymptotic


@dataclass(frozen=True)
class GFunction:
    """
    g(x) = t(x) + ξ sqrt(2 log log t(x)) / log t(x), t the inverse of main_term(·, c).

    Attributes:
        xi: Real offset ξ
        counting_constant: 11/8 makes t(k) an unbiased estimate of γ_k
    """

    xi: float = 0.0
    counting_constant: float = COUNTING_CONSTANT_G
    x0: int = field(init=False)

    def __post_init__(self) -> None:
        branch_floor = float(main_term(max(TWO_PI, math.e + 0.01), self.counting_constant))
        object.__setattr__(self, "x0", math.floor(branch_floor) + 1)

    def t_of(self, x: ArrayLike) -> NDArray[np.float64] | float:
        """Inverse of main_term(·, counting_constant)."""
        return invert_main_term(x, self.counting_constant)

    def __call__(self, x: ArrayLike) -> NDArray[np.float64] | float:
        xs = np.asarray(x, dtype=np.float64)
        if np.any(xs < self.x0):
            raise DomainError(f"g(x) defined for x >= x0 = {self.x0}")
        t = np.asarray(self.t_of(xs), dtype=np.float64)
        value = t + self.xi * np.asarray(sigma(t))
        if value.ndim == 0:
            return float(value)
        return value

    def second_derivative(self, x: float) -> Curvature:
        """
        Central second difference of g with step h = x·1e-5.

        Raises:
            DomainError: If x < 1e3
        """
        if x < 1.0e3:
            raise DomainError(f"g second derivative evaluated for x >= 1e3, got {x}")
        h = x * 1.0e-5
        vals = np.asarray(self(np.array([x - h, x, x + h])))
        fd = float((vals[2] - 2.0 * vals[1] + vals[0]) / (h * h))
        log_x = math.log(x)
        asymptotic = -TWO_PI / (x * log_x * log_x)
        t = float(self.t_of(x))
        exact_t = -(TWO_PI**2) / (t * math.log(t / TWO_PI) ** 3)
        return Curvature(x=x, finite_difference=fd, asymptotic=asymptotic,
                         t_second_derivative=exact_t)

    def third_difference(self, x: float) -> float:
        """
        Central third difference of g with step h = x·1e-2, an estimate of g'''(x).

        A step of x·1e-5 puts g'''h^3 below the rounding noise of g.
        """
        if x < 1.0e3:
            raise DomainError(f"g third difference evaluated for x >= 1e3, got {x}")
        h = x * 1.0e-2
        v = np.asarray(self(np.array([x - 2 * h, x - h, x + h, x + 2 * h])))
        return float((v[3] - 2.0 * v[2] + 2.0 * v[1] - v[0]) / (2.0 * h**3))


def g_eval(x: ArrayLike, xi: float = 0.0,
           c: float = COUNTING_CONSTANT_G) -> NDArray[np.float64] | float:
    """g(x) for offset ξ (see GFunction)."""
    return GFunction(xi=xi, counting_constant=c)(x)


def g_second_derivative(x: float, xi: float = 0.0) -> Curvature:
    """Finite-difference g''(x) with its asymptotic value -2π/(x (log x)^2) and their ratio."""
    return GFunction(xi=xi).second_derivative(x)
