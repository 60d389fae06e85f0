"""
ZeroTable: immutable table of critical-line zero ordinates, plus the plain-text table format.

SLOs:
- Correctness: 100% (positivity and nondecreasing order validated at construction)
- Correctness: write_table/ingest_table round-trip every float exactly (repr formatting)
- Observability: Parse errors name the line number, order errors the 1-based index
- Maintainability: One format for ingested tables and the on-disk cache

Error Handling: raise_and_propagate
- EmptyTableError ("no zeros") for a source without entries
- ZeroTableParseError with the line number for malformed lines
- MonotonicityError naming the offending index

File format: one ordinate per line in decimal, ascending. Lines starting with '#' are headers;
headers of the form '# key=value' are read back as metadata.
"""

import hashlib
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from zeta_fluctuations.errors import (
    EmptyTableError,
    MonotonicityError,
    ZeroTableParseError,
)

ZeroSource = Literal["computed", "ingested"]


@dataclass(frozen=True)
class ZeroTable:
    """
    Ordinates γ_1 <= γ_2 <= ... of zeros on the critical line.

    Immutable after construction (the backing array is read-only), so a table can be shared
    across threads.

    Attributes:
        zeros: Ordinates, strictly positive and nondecreasing; entry i-1 holds γ_i
        source: "computed" (Riemann–Siegel search) or "ingested" (external table)
        max_height: Height T below which the table is complete

    Raises:
        EmptyTableError: If zeros is empty
        MonotonicityError: If order or positivity is violated
    """

    zeros: NDArray[np.float64]
    source: ZeroSource
    max_height: float

    def __post_init__(self) -> None:
        arr = np.array(self.zeros, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise EmptyTableError("no zeros")
        if not np.all(np.isfinite(arr)) or arr[0] <= 0.0:
            raise MonotonicityError(1, 0.0, float(arr[0]))
        bad = np.flatnonzero(np.diff(arr) < 0.0)
        if bad.size:
            i = int(bad[0])
            raise MonotonicityError(i + 2, float(arr[i]), float(arr[i + 1]))
        if self.max_height < arr[-1]:
            raise ValueError(
                f"max_height ({self.max_height}) below last zero ({arr[-1]})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "zeros", arr)

    def __len__(self) -> int:
        return int(self.zeros.shape[0])

    def gamma(self, k: int) -> float:
        """γ_k with 1-based k."""
        if k < 1 or k > len(self):
            raise IndexError(f"zero index {k} outside 1..{len(self)}")
        return float(self.zeros[k - 1])

    def gammas(self, k: ArrayLike) -> NDArray[np.float64]:
        """γ_k for an array of 1-based indices."""
        idx = np.asarray(k, dtype=np.int64)
        if idx.size and (idx.min() < 1 or idx.max() > len(self)):
            raise IndexError(f"zero indices outside 1..{len(self)}")
        return self.zeros[idx - 1]

    def head(self, limit: int) -> "ZeroTable":
        """First `limit` zeros; completeness height drops to the last kept zero."""
        if limit >= len(self):
            return self
        kept = self.zeros[:limit]
        return ZeroTable(zeros=kept, source=self.source, max_height=float(kept[-1]))

    def fingerprint(self) -> str:
        """Short sha256 of the ordinates, for CSV header metadata."""
        h = hashlib.sha256(np.ascontiguousarray(self.zeros).tobytes())
        h.update(f"{self.source}:{self.max_height!r}".encode())
        return h.hexdigest()[:16]


def _parse_lines(
    lines: list[str], limit: int | None, path: str | None
) -> tuple[list[float], dict[str, str]]:
    values: list[float] = []
    meta: dict[str, str] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            continue
        try:
            value = float(line.split()[0])
        except ValueError:
            raise ZeroTableParseError(number, raw.rstrip("\n"), path) from None
        if not math.isfinite(value):
            raise ZeroTableParseError(number, raw.rstrip("\n"), path)
        values.append(value)
        if limit is not None and len(values) >= limit:
            break
    return values, meta


def ingest_table(path: Path | str, limit: int | None = None) -> ZeroTable:
    """
    Parse the first `limit` zeros of a plain-text zero table.

    Args:
        path: File with one ordinate per line, optional '#' header lines
        limit: Maximum number of zeros to read (None reads all)

    Returns:
        ZeroTable with source "ingested" and max_height equal to the last entry

    Raises:
        FileNotFoundError: If path does not exist (propagated)
        ZeroTableParseError: On a malformed line
        EmptyTableError: If no zeros are found
        MonotonicityError: If ordinates are out of order
    """
    path = Path(path)
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    with path.open("r", encoding="utf-8") as fh:
        values, _ = _parse_lines(fh.readlines(), limit, str(path))
    if not values:
        raise EmptyTableError(f"no zeros in {path}")
    return ZeroTable(zeros=np.array(values), source="ingested", max_height=values[-1])


def read_table(path: Path | str) -> ZeroTable:
    """Read a table written by write_table, restoring source and max_height from headers."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        values, meta = _parse_lines(fh.readlines(), None, str(path))
    if not values:
        raise EmptyTableError(f"no zeros in {path}")
    source: ZeroSource = "computed" if meta.get("source") == "computed" else "ingested"
    max_height = float(meta.get("max_height", values[-1]))
    return ZeroTable(zeros=np.array(values), source=source, max_height=max_height)


def write_table(table: ZeroTable, path: Path | str) -> None:
    """Write a table in the ingest format; repr() keeps every ordinate bit-exact."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(f"# source={table.source}\n")
        fh.write(f"# max_height={table.max_height!r}\n")
        fh.write(f"# count={len(table)}\n")
        fh.writelines(f"{z!r}\n" for z in table.zeros.tolist())
