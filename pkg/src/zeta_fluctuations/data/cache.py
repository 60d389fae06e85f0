"""
On-disk zero cache in the plain-text table format.

SLOs:
- Availability: 100% (local filesystem only, no remote fetching)
- Correctness: 100% (cache round-trips bit-exact through write_table/read_table)
- Observability: Cache location resolved from flag, then ZETA_FLUCT_CACHE, then platformdirs
- Maintainability: Same format as ingested tables, so a cache file is itself ingestable

Error Handling: raise_and_propagate
- FileNotFoundError when loading an empty cache (propagated)
- ValueError if the cache path exists but is not a directory
"""

import logging
import os
from pathlib import Path

from platformdirs import user_cache_dir

from zeta_fluctuations.data.zero_table import ZeroTable, read_table, write_table

logger = logging.getLogger(__name__)

CACHE_ENV_VAR = "ZETA_FLUCT_CACHE"
CACHE_FILENAME = "zeros.txt"


def resolve_cache_dir(cache_dir: Path | str | None = None) -> Path:
    """Explicit directory wins, then $ZETA_FLUCT_CACHE, then the platform user cache."""
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path(user_cache_dir("zeta-fluctuations", "eonlabs"))


class ZeroCache:
    """
    Directory holding the current zero table.

    Raises:
        ValueError: If cache_dir exists and is not a directory
    """

    def __init__(self, cache_dir: Path | str | None = None):
        self.cache_dir = resolve_cache_dir(cache_dir)
        if self.cache_dir.exists() and not self.cache_dir.is_dir():
            raise ValueError(f"cache_dir must be directory: {self.cache_dir}")

    @property
    def path(self) -> Path:
        return self.cache_dir / CACHE_FILENAME

    def exists(self) -> bool:
        return self.path.is_file()

    def load(self) -> ZeroTable:
        """
        Load the cached table.

        Raises:
            FileNotFoundError: If nothing has been cached yet
        """
        if not self.exists():
            raise FileNotFoundError(f"no zero cache at {self.path}")
        table = read_table(self.path)
        logger.debug("Loaded %d zeros (%s) from %s", len(table), table.source, self.path)
        return table

    def store(self, table: ZeroTable) -> Path:
        """Replace the cached table; written to a temp file first, then renamed."""
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        write_table(table, tmp)
        tmp.replace(self.path)
        logger.info(
            "Cached %d zeros (%s, complete below %.6f) at %s",
            len(table), table.source, table.max_height, self.path,
        )
        return self.path
