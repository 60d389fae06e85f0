"""
Zero search for Hardy's Z function on Gram blocks, and full-table computation.

SLOs:
- Correctness: every sign change of Z inside a Gram block is bracketed, then refined by
  scipy.optimize.brentq to a bracket width below 1e-9
- Correctness: deterministic (fixed grids, fixed refinement order, no randomness)
- Observability: A count that disagrees with the main-term prediction by more than 2 raises
  SuspectedMissedZerosWarning and is logged
- Maintainability: Disjoint height blocks run in a process pool and are merged by sorting

Error Handling: raise_and_propagate
- DomainError for t_lo < 10, t_hi > 1e8 or t_hi <= t_lo

A Gram point g_n is good when (-1)^n Z(g_n) > 0. Between consecutive good Gram points g_a, g_b
Rosser's rule expects b - a zeros. Each block's grid starts at its Gram points and is halved
until the expected number of sign changes appears or every Gram interval is cut into 64
pieces. Heights 10 <= t < g_0 are treated as the Gram interval [g_{-1}, g_0] with g_{-1}
clamped to 10.
"""

import logging
import math
import multiprocessing
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from zeta_fluctuations.core.predictor import COUNTING_CONSTANT_T, invert_main_term, main_term
from zeta_fluctuations.core.riemann_siegel import (
    EM_CUTOFF,
    MAX_HEIGHT,
    MIN_HEIGHT,
    gram_points,
    hardy_z,
    hardy_z_vector,
    riemann_siegel_theta,
)
from zeta_fluctuations.data.zero_table import ZeroTable
from zeta_fluctuations.errors import DomainError, SuspectedMissedZerosWarning

logger = logging.getLogger(__name__)

MAX_SUBDIVISIONS = 64
ROOT_XTOL = 1e-10
MISSED_ZERO_TOLERANCE = 2
ZEROS_PER_TASK = 20_000
_MAX_BAD_EXTENSION = 64


@dataclass(frozen=True)
class GramBlock:
    """
    Interval between two good Gram points.

    Attributes:
        lo: Left endpoint (Gram point, or 10 for the first block)
        hi: Right endpoint (Gram point)
        expected_sign_changes: Number of Gram intervals spanned (Rosser's rule count)
        gram_grid: Gram points lo, ..., hi inclusive
    """

    lo: float
    hi: float
    expected_sign_changes: int
    gram_grid: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"GramBlock needs lo < hi, got [{self.lo}, {self.hi}]")


def _gram_index(t: float) -> int:
    """Largest n with g_n <= t (-1 below g_0)."""
    return max(math.floor(riemann_siegel_theta(t) / math.pi), -1)


def _gram_grid(n_lo: int, n_hi: int) -> NDArray[np.float64]:
    """g_n for n_lo <= n <= n_hi, with g_{-1} replaced by 10."""
    head = [MIN_HEIGHT] if n_lo < 0 else []
    body = gram_points(max(n_lo, 0), n_hi)
    return np.minimum(np.concatenate([np.array(head), body]), MAX_HEIGHT)


def _is_good(n: int, z: float) -> bool:
    return (z > 0.0) if n % 2 == 0 else (z < 0.0)


def gram_blocks(t_lo: float, t_hi: float, em_cutoff: float = EM_CUTOFF) -> list[GramBlock]:
    """
    Gram blocks covering [t_lo, t_hi], extended outwards to the nearest good Gram points.

    Raises:
        DomainError: If t_lo < 10, t_hi > 1e8 or t_hi <= t_lo
    """
    _check_range(t_lo, t_hi)
    n_lo = _gram_index(t_lo)
    n_hi = min(_gram_index(t_hi) + 1, _gram_index(MAX_HEIGHT))

    points = _gram_grid(n_lo, n_hi)
    z = hardy_z_vector(points, em_cutoff)
    ns = list(range(n_lo, n_hi + 1))

    # extend to a good Gram point at both ends
    for _ in range(_MAX_BAD_EXTENSION):
        if ns[0] < 0 or _is_good(ns[0], float(z[0])):
            break
        n_new = ns[0] - 1
        pt = _gram_grid(n_new, n_new)
        points = np.concatenate([pt, points])
        z = np.concatenate([hardy_z_vector(pt, em_cutoff), z])
        ns.insert(0, n_new)
    for _ in range(_MAX_BAD_EXTENSION):
        if _is_good(ns[-1], float(z[-1])) or points[-1] >= MAX_HEIGHT:
            break
        n_new = ns[-1] + 1
        pt = _gram_grid(n_new, n_new)
        points = np.concatenate([points, pt])
        z = np.concatenate([z, hardy_z_vector(pt, em_cutoff)])
        ns.append(n_new)

    good = [i for i, n in enumerate(ns) if n < 0 or _is_good(n, float(z[i]))]
    if good[0] != 0:
        good.insert(0, 0)
    if good[-1] != len(ns) - 1:
        good.append(len(ns) - 1)

    blocks = []
    for a, b in zip(good[:-1], good[1:], strict=True):
        grid = tuple(float(v) for v in points[a : b + 1])
        if grid[-1] <= grid[0]:
            continue
        blocks.append(GramBlock(lo=grid[0], hi=grid[-1], expected_sign_changes=b - a,
                                gram_grid=grid))
    return blocks


def _check_range(t_lo: float, t_hi: float) -> None:
    if not (math.isfinite(t_lo) and math.isfinite(t_hi)):
        raise DomainError("zero search bounds must be finite")
    if t_lo < MIN_HEIGHT:
        raise DomainError(f"t_lo must be >= {MIN_HEIGHT}, got {t_lo}")
    if t_hi > MAX_HEIGHT:
        raise DomainError(f"t_hi must be <= {MAX_HEIGHT:g}, got {t_hi}")
    if t_hi <= t_lo:
        raise DomainError(f"need t_lo < t_hi, got t_lo={t_lo}, t_hi={t_hi}")


def _refine_grid(grid: NDArray[np.float64], factor: int) -> NDArray[np.float64]:
    """Cut every interval of `grid` into `factor` equal pieces."""
    steps = np.linspace(0.0, 1.0, factor + 1)[:-1]
    left = grid[:-1, None] + (grid[1:] - grid[:-1])[:, None] * steps[None, :]
    return np.concatenate([left.ravel(), grid[-1:]])


def _block_zeros(block: GramBlock, em_cutoff: float) -> NDArray[np.float64]:
    base = np.array(block.gram_grid, dtype=np.float64)
    factor = 1
    while True:
        grid = _refine_grid(base, factor)
        z = hardy_z_vector(grid, em_cutoff)
        change = np.flatnonzero(np.signbit(z[:-1]) != np.signbit(z[1:]))
        if change.size >= block.expected_sign_changes or factor >= MAX_SUBDIVISIONS:
            break
        factor *= 2

    if change.size < block.expected_sign_changes:
        logger.debug(
            "Gram block [%.6f, %.6f]: %d sign changes, %d expected",
            block.lo, block.hi, change.size, block.expected_sign_changes,
        )

    roots = np.empty(change.size, dtype=np.float64)
    for j, i in enumerate(change.tolist()):
        a, b = float(grid[i]), float(grid[i + 1])
        if z[i] == 0.0:
            roots[j] = a
        elif z[i + 1] == 0.0:
            roots[j] = b
        else:
            roots[j] = brentq(hardy_z, a, b, args=(em_cutoff,), xtol=ROOT_XTOL)
    return roots


def _search(t_lo: float, t_hi: float, em_cutoff: float) -> NDArray[np.float64]:
    """Sign-change zeros of Z in [t_lo, t_hi), without the count diagnostic."""
    roots = [_block_zeros(b, em_cutoff) for b in gram_blocks(t_lo, t_hi, em_cutoff)]
    found = np.unique(np.concatenate(roots)) if roots else np.empty(0)
    return found[(found >= t_lo) & (found < t_hi)]


def _check_count(count: int, t_lo: float, t_hi: float) -> None:
    predicted = float(main_term(t_hi)) - float(main_term(t_lo))
    if abs(count - predicted) > MISSED_ZERO_TOLERANCE:
        logger.warning(
            "Suspected missed zeros in [%.6f, %.6f): found %d, main term predicts %.2f",
            t_lo, t_hi, count, predicted,
        )
        warnings.warn(
            f"found {count} zeros in [{t_lo}, {t_hi}), main term predicts {predicted:.2f}",
            SuspectedMissedZerosWarning,
            stacklevel=3,
        )


def find_zeros(t_lo: float, t_hi: float, em_cutoff: float = EM_CUTOFF) -> NDArray[np.float64]:
    """
    All sign-change zeros of Z(t) with t_lo <= t < t_hi, ascending.

    Args:
        t_lo: Lower height, >= 10
        t_hi: Upper height, <= 1e8
        em_cutoff: Heights below this evaluate Z by Euler–Maclaurin

    Returns:
        Zero ordinates refined to a bracket width below 1e-9

    Raises:
        DomainError: If bounds are invalid

    Warns:
        SuspectedMissedZerosWarning: If the count differs from M(t_hi) - M(t_lo) by more than 2
    """
    found = _search(t_lo, t_hi, em_cutoff)
    _check_count(int(found.size), t_lo, t_hi)
    return found


def _task_edges(t_hi: float, zeros_per_task: int) -> NDArray[np.float64]:
    total = float(main_term(t_hi))
    cuts = np.arange(zeros_per_task, total, zeros_per_task, dtype=np.float64)
    inner = np.atleast_1d(np.asarray(invert_main_term(cuts, COUNTING_CONSTANT_T)))
    inner = inner[(inner > MIN_HEIGHT) & (inner < t_hi)]
    return np.concatenate([[MIN_HEIGHT], inner, [t_hi]])


def compute_table(
    t_hi: float,
    workers: int | None = None,
    em_cutoff: float = EM_CUTOFF,
    zeros_per_task: int = ZEROS_PER_TASK,
) -> ZeroTable:
    """
    Compute every zero below t_hi.

    The range (10, t_hi) is split into disjoint height blocks of about `zeros_per_task`
    zeros each; blocks run in a spawn-started process pool when workers > 1 and are merged
    by sorting.

    Args:
        t_hi: Completeness height of the table
        workers: Process count (None or 1 runs in-process)
        em_cutoff: Passed through to Z
        zeros_per_task: Target zeros per parallel task

    Returns:
        ZeroTable with source "computed" and max_height = t_hi

    Raises:
        DomainError: If t_hi <= 10 or t_hi > 1e8
    """
    _check_range(MIN_HEIGHT, t_hi)
    edges = _task_edges(t_hi, zeros_per_task)
    spans = list(zip(edges[:-1].tolist(), edges[1:].tolist(), strict=True))
    logger.info("Computing zeros below %.3f in %d blocks", t_hi, len(spans))

    if workers is None or workers <= 1 or len(spans) == 1:
        parts = [_search(lo, hi, em_cutoff) for lo, hi in spans]
    else:
        # numba parallel kernels hold an OpenMP runtime that forked children cannot reuse
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            futures = [pool.submit(_search, lo, hi, em_cutoff) for lo, hi in spans]
            parts = [f.result() for f in futures]

    zeros = np.sort(np.concatenate(parts))
    _check_count(int(zeros.size), MIN_HEIGHT, t_hi)
    logger.info("Found %d zeros below %.3f", zeros.size, t_hi)
    return ZeroTable(zeros=zeros, source="computed", max_height=float(t_hi))
