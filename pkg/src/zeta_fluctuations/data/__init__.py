"""Zero tables, the on-disk cache and parameter schemas."""

from zeta_fluctuations.data.cache import ZeroCache
from zeta_fluctuations.data.schema import DirichletParams, OffsetSpec, WindowSpec
from zeta_fluctuations.data.zero_table import ZeroTable, ingest_table, read_table, write_table

__all__ = [
    "ZeroTable",
    "ZeroCache",
    "ingest_table",
    "read_table",
    "write_table",
    "WindowSpec",
    "OffsetSpec",
    "DirichletParams",
]
