"""
Pydantic models for moment, CDF and covariance reports.

Single source of truth for the CSV report schemas written by the command line.

SLO Guarantees:
- Correctness: deviations are computed fields, recomputed from empirical and target on read
- Observability: Full type hints, JSON Schema generation
- Maintainability: Raw empirical values are stored so tolerances can be revisited later

Error Handling: raise_and_propagate (Pydantic raises ValidationError on invalid data)
"""

from typing import Literal

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, computed_field

RowKind = Literal["moment", "cdf", "joint_moment", "s_moment"]


class MomentRow(BaseModel):
    """One empirical statistic next to its Gaussian target."""

    kind: RowKind = Field(description="Statistic family of the row")
    parameter: str = Field(description="Moment order, grid point or (a, b) pair, as text")
    empirical: float = Field(description="Empirical value over the sample")
    target: float = Field(description="Gaussian target value")

    model_config = ConfigDict(frozen=True)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def deviation(self) -> float:
        """|empirical - target|."""
        return abs(self.empirical - self.target)


class MomentReport(BaseModel):
    """
    Empirical moments or CDF values of a sample against Gaussian targets.

    ks_statistic is set for CDF reports: the sup distance between the empirical CDF and Φ.
    """

    name: str = Field(description="Sample the report describes, e.g. 'f' or 'X(xi=0)'")
    n_samples: int = Field(ge=1, description="Number of samples")
    rows: list[MomentRow] = Field(description="One row per moment order or grid point")
    ks_statistic: float | None = Field(default=None, ge=0.0, le=1.0)
    ks_pvalue: float | None = Field(default=None, ge=0.0, le=1.0)

    model_config = ConfigDict(frozen=True)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.rows), default=0.0)

    def row(self, parameter: str) -> MomentRow:
        for r in self.rows:
            if r.parameter == parameter:
                return r
        raise KeyError(f"no row {parameter!r} in report {self.name!r}")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "sample": self.name,
                "kind": [r.kind for r in self.rows],
                "parameter": [r.parameter for r in self.rows],
                "empirical": [r.empirical for r in self.rows],
                "target": [r.target for r in self.rows],
                "deviation": [r.deviation for r in self.rows],
                "n_samples": self.n_samples,
            }
        )


class CovarianceReport(BaseModel):
    """Correlation of paired fluctuations at index offset floor((log N)^β) against (1 - β)₊."""

    beta: float = Field(gt=0.0, description="Offset exponent β")
    offset: int = Field(ge=0, description="Index offset k2 - k1")
    n_pairs: int = Field(ge=1, description="Number of (k1, k2) pairs")
    corr_f: float = Field(ge=-1.0, le=1.0, description="Pearson correlation of (f1, f2)")
    product_moment_f: float = Field(description="Raw product moment E[f1 f2]")
    corr_x: float | None = Field(default=None, ge=-1.0, le=1.0)
    product_moment_x: float | None = None

    model_config = ConfigDict(frozen=True)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def target(self) -> float:
        """(1 - β)₊."""
        return max(1.0 - self.beta, 0.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def deviation(self) -> float:
        return abs(self.corr_f - self.target)

    def to_record(self) -> dict[str, float | int | None]:
        return {
            "beta": self.beta,
            "offset": self.offset,
            "n_pairs": self.n_pairs,
            "corr_f": self.corr_f,
            "product_moment_f": self.product_moment_f,
            "corr_x": self.corr_x,
            "product_moment_x": self.product_moment_x,
            "target": self.target,
            "deviation": self.deviation,
        }


def covariance_frame(reports: list[CovarianceReport]) -> pd.DataFrame:
    """One row per β, in the given order."""
    return pd.DataFrame([r.to_record() for r in reports])
