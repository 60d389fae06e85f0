"""
RunConfig: experiment parameters from a line-oriented key=value file, overridden by flags.

SLOs:
- Correctness: 100% (Pydantic v2 validation of every field, θ ∈ (1/2, 1], β > 0)
- Observability: Unknown keys are rejected with the offending line number
- Maintainability: Lists are comma separated, so a config line reads like its CLI flag

Error Handling: raise_and_propagate
- ValueError with the line number for malformed lines or unknown keys
- pydantic ValidationError for out-of-range values

File format:
    # comment
    n = 100000
    theta = 1.0
    betas = 0.25, 0.5, 1, 2
"""

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator


def _split_list(v: Any) -> Any:
    if isinstance(v, str):
        return tuple(item.strip() for item in v.split(",") if item.strip())
    return v


class RunConfig(BaseModel):
    """
    Parameters shared by every subcommand.

    Raises ValidationError for θ outside (1/2, 1], non-positive β or ξ lists that are empty.
    """

    t_max: float | None = Field(default=None, gt=10.0, description="Compute zeros below t_max")
    zeros_file: Path | None = Field(default=None, description="Zero table file to ingest")
    limit: int | None = Field(default=None, ge=1, description="Number of zeros to ingest")
    cache_dir: Path | None = Field(default=None, description="Zero cache directory")
    workers: int = Field(default=1, ge=1, description="Processes for zero computation")

    n: int = Field(default=100_000, ge=1, description="Window base index N")
    theta: float = Field(default=1.0, gt=0.5, le=1.0, description="Window exponent θ")
    xis: tuple[float, ...] = Field(default=(-1.0, 0.0, 1.0), min_length=1)
    betas: tuple[float, ...] = Field(default=(0.25, 0.5, 1.0, 2.0), min_length=1)
    x_cutoffs: tuple[float, ...] = Field(default=(10.0,), min_length=1)

    seed: int = Field(default=0, description="Seed of the exponential-sum battery")
    out_dir: Path = Field(default=Path("."), description="Directory receiving CSV reports")

    model_config = ConfigDict(frozen=True, extra="forbid")

    @field_validator("xis", "betas", "x_cutoffs", mode="before")
    @classmethod
    def split_lists(cls, v: Any) -> Any:
        return _split_list(v)

    @field_validator("betas")
    @classmethod
    def validate_betas(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        bad = [b for b in v if not b > 0.0]
        if bad:
            raise ValueError(f"β > 0 required, got {bad}")
        return v

    @field_validator("x_cutoffs")
    @classmethod
    def validate_cutoffs(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        bad = [x for x in v if x < 2.0]
        if bad:
            raise ValueError(f"x >= 2 required, got {bad}")
        return v

    def echo(self) -> dict[str, str]:
        """Flat key=value view for CSV header metadata."""
        out = {}
        for key, value in self.model_dump().items():
            if isinstance(value, tuple):
                value = ",".join(f"{v:g}" for v in value)
            out[key] = "" if value is None else str(value)
        return out


def parse_config_lines(lines: list[str], source: str = "<config>") -> dict[str, str]:
    """
    Parse key=value lines; blank lines and '#' comments are skipped.

    Raises:
        ValueError: On a line without '=' or with a key RunConfig does not define
    """
    values: dict[str, str] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key:
            raise ValueError(f"{source}:{number}: expected key=value, got {raw.rstrip()!r}")
        if key not in RunConfig.model_fields:
            raise ValueError(f"{source}:{number}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def load_config(path: Path | str | None = None, **overrides: Any) -> RunConfig:
    """
    RunConfig from an optional key=value file, then non-None overrides on top.

    Raises:
        FileNotFoundError: If path does not exist (propagated)
        ValueError: On malformed lines
        ValidationError: On out-of-range values
    """
    data: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        with path.open("r", encoding="utf-8") as fh:
            data.update(parse_config_lines(fh.readlines(), str(path)))
    data.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig.model_validate(data)
