"""
Shared fixtures: published reference zeros and computed zero tables.

SLOs:
- Correctness: 100% - Reference ordinates are the published values to 18 decimals
- Performance: Session-scoped tables are computed once per test run
- Maintainability: Large tables honour ZETA_FLUCT_TEST_ZEROS to skip computation

Error Handling: raise_and_propagate
- Fixture failures (e.g. a bad ZETA_FLUCT_TEST_ZEROS file) propagate with full context
"""

import os
from pathlib import Path

import numpy as np
import pytest

from zeta_fluctuations import ZeroTable, compute_table, ingest_table

# γ_1 .. γ_10
REFERENCE_ZEROS = (
    14.134725141734693790,
    21.022039638771554993,
    25.010857580145688763,
    30.424876125859513210,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159727,
    49.773832477672302181,
)

# Enough zeros for the window N = 1e5, θ = 1 with the β = 2 offset (k2 <= 200132)
LARGE_TABLE_HEIGHT = 146_000.0
LARGE_TABLE_ENV_VAR = "ZETA_FLUCT_TEST_ZEROS"


@pytest.fixture(scope="session")
def reference_zeros() -> np.ndarray:
    return np.array(REFERENCE_ZEROS)


@pytest.fixture(scope="session")
def table_10k() -> ZeroTable:
    """Every zero below T = 10^4 (10142 zeros)."""
    return compute_table(10_000.0)


@pytest.fixture(scope="session")
def table_100(table_10k: ZeroTable) -> ZeroTable:
    return table_10k.head(100)


@pytest.fixture(scope="session")
def large_table() -> ZeroTable:
    """
    Zeros up to height 1.46e5, for slow statistical acceptance tests.

    Ingests $ZETA_FLUCT_TEST_ZEROS when set, otherwise computes with every CPU.
    """
    path = os.environ.get(LARGE_TABLE_ENV_VAR)
    if path:
        return ingest_table(Path(path))
    return compute_table(LARGE_TABLE_HEIGHT, workers=os.cpu_count() or 1)


@pytest.fixture
def write_zeros(tmp_path: Path):
    """
    Factory writing ordinate lines (plus optional raw lines) to a file under tmp_path.

    Returns function(lines, name="zeros.txt") -> Path.
    """

    def _write(lines: list[str], name: str = "zeros.txt") -> Path:
        path = tmp_path / name
        path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
        return path

    return _write
