"""
Pydantic schemas for sampling windows, index offsets and Dirichlet-polynomial parameters.

SLOs:
- Availability: 100% (strict validation, fail fast on invalid parameters)
- Correctness: 100% (Pydantic v2 validation, floor arithmetic done once here)
- Observability: Full type coverage (mypy strict)
- Maintainability: Out-of-box Pydantic validation

Error Handling: raise_and_propagate (Pydantic raises ValidationError on invalid parameters)
"""

import math

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MIN_DIRICHLET_X = 2.0 ** (1.0 / 3.0)


class WindowSpec(BaseModel):
    """
    Sampling window I_N = [N, N + H - 1] with H = floor(N^θ).

    Every index in the window is one equally likely atom of the uniform sampling scheme.
    Raises ValidationError for θ outside (1/2, 1] or N < 1.
    """

    n: int = Field(ge=1, description="Base index N")
    theta: float = Field(gt=0.5, le=1.0, description="Window exponent θ ∈ (1/2, 1]")

    model_config = ConfigDict(frozen=True)

    @property
    def h(self) -> int:
        """Window size H = floor(N^θ), at least 1."""
        if self.theta == 1.0:
            return self.n
        return max(1, math.floor(self.n**self.theta))

    @property
    def first(self) -> int:
        return self.n

    @property
    def last(self) -> int:
        return self.n + self.h - 1

    def indices(self) -> NDArray[np.int64]:
        return np.arange(self.first, self.last + 1, dtype=np.int64)


class OffsetSpec(BaseModel):
    """Index offset floor((log N)^β) between the two zeros of a pair."""

    beta: float = Field(gt=0.0, description="Offset exponent β > 0")

    model_config = ConfigDict(frozen=True)

    def offset(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"offset requires N >= 1, got {n}")
        return math.floor(math.log(n) ** self.beta)

    @property
    def target(self) -> float:
        """Limiting correlation (1 - β)₊."""
        return max(1.0 - self.beta, 0.0)


class DirichletParams(BaseModel):
    """
    Cutoff for S_x(t) = -(1/π) Σ_{p ≤ x³} sin(t log p)/√p, plus an optional t-range.

    Below x = 2^(1/3) the prime set is empty and S_x vanishes.

    Raises ValidationError if x <= 0, x is not finite or t_hi <= t_lo.
    """

    x: float = Field(gt=0.0, description="Cutoff parameter; primes run to x³")
    t_lo: float | None = Field(default=None, description="Lower end of the evaluation range")
    t_hi: float | None = Field(default=None, description="Upper end of the evaluation range")

    model_config = ConfigDict(frozen=True)

    @field_validator("x")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"x must be finite, got {v}")
        return v

    @model_validator(mode="after")
    def validate_range(self) -> "DirichletParams":
        if self.t_lo is not None and self.t_hi is not None and self.t_hi <= self.t_lo:
            raise ValueError(f"t_hi ({self.t_hi}) must be > t_lo ({self.t_lo})")
        return self

    @property
    def prime_cutoff(self) -> int:
        """Largest integer P with P <= x³ (tolerant of rounding in x = P^(1/3))."""
        return math.floor(self.x**3 * (1.0 + 1e-12))
