"""
zeta-fluct command line: zero acquisition, fluctuation statistics and CSV reports.

Exit status:
    0  every requested report was written
    1  computation failed
    2  usage error, invalid parameter or missing input file
    3  the zero cache does not cover the requested window (message states the height needed)

Every CSV starts with '#'-prefixed metadata lines (generation time, command, config echo,
zero-table fingerprint) followed by a plain CSV body. Bodies are deterministic given the
cache and the flags.

CSV schemas:
    samples.csv   k, gamma, t, sigma, f, X
    moments.csv   sample, kind, parameter, empirical, target, deviation, n_samples
    cdf.csv       moments.csv columns plus ks_statistic
    cov.csv       beta, offset, n_pairs, corr_f, product_moment_f, corr_x, product_moment_x,
                  target, deviation
    expsum.csv    experiment_id, kind, k, h, theta, primes, split, offset, abs_sum, lam,
                  kappa, bound, ratio, factorization_ok
    selberg.csv   x, k, t, S, S_x, S_x_weighted
    grid.csv      k, t_k, sigma_k
    phasesum.csv  beta, x, s, re_sum, ratio, target, distance
"""

import argparse
import logging
import os
import sys
import warnings
from collections.abc import Callable, Sequence
from datetime import datetime, timezone
from pathlib import Path

import pandas as pd
from pydantic import ValidationError

from zeta_fluctuations import __version__
from zeta_fluctuations.config import RunConfig, load_config
from zeta_fluctuations.core.counting import verify_count
from zeta_fluctuations.core.predictor import predicted_grid
from zeta_fluctuations.core.zeros import compute_table
from zeta_fluctuations.data.cache import CACHE_ENV_VAR, ZeroCache
from zeta_fluctuations.data.schema import WindowSpec
from zeta_fluctuations.data.zero_table import ZeroTable, ingest_table
from zeta_fluctuations.errors import CoverageError, DomainError, ZeroTableParseError
from zeta_fluctuations.experiments.expsum import (
    phase_sum_trend,
    run_battery,
    unique_factorization_check,
)
from zeta_fluctuations.statistics.reports import covariance_frame
from zeta_fluctuations.statistics.sampler import (
    covariance_report,
    empirical_cdf_vs_gaussian,
    fluctuations,
    moment_report,
    selberg_comparison,
    two_point_samples,
    x_samples,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_COVERAGE = 3


class UsageError(ValueError):
    """Flag combination rejected before any computation."""


def write_csv(frame: pd.DataFrame, path: Path, meta: dict[str, str]) -> Path:
    """Write '# key=value' metadata lines, then the CSV body."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        for key, value in meta.items():
            fh.write(f"# {key}={value}\n")
        frame.to_csv(fh, index=False)
    logger.info("Wrote %s (%d rows)", path, len(frame))
    return path


def _meta(command: str, cfg: RunConfig, table: ZeroTable | None = None) -> dict[str, str]:
    meta = {
        "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "command": command,
        "version": __version__,
    }
    meta.update({f"config.{k}": v for k, v in cfg.echo().items()})
    if table is not None:
        meta.update(
            {
                "zeros.fingerprint": table.fingerprint(),
                "zeros.count": str(len(table)),
                "zeros.source": table.source,
                "zeros.max_height": repr(table.max_height),
            }
        )
    return meta


def _cache(args: argparse.Namespace, cfg: RunConfig) -> ZeroCache:
    """--zeros-cache, then $ZETA_FLUCT_CACHE, then the config file, then platformdirs."""
    if args.zeros_cache is not None:
        return ZeroCache(args.zeros_cache)
    if os.environ.get(CACHE_ENV_VAR):
        return ZeroCache()
    return ZeroCache(cfg.cache_dir)


def _load_table(args: argparse.Namespace, cfg: RunConfig) -> ZeroTable:
    cache = _cache(args, cfg)
    if not cache.exists():
        raise CoverageError(
            f"no zero cache at {cache.path}; run 'zeta-fluct zeros compute' or "
            f"'zeta-fluct zeros ingest' first"
        )
    return cache.load()


def _dedupe(values: Sequence[float], name: str) -> tuple[float, ...]:
    unique = tuple(dict.fromkeys(values))
    if len(unique) < len(values):
        logger.warning("Duplicate %s values removed: %s -> %s", name, list(values), list(unique))
        warnings.warn(f"duplicate {name} values removed", UserWarning, stacklevel=2)
    return unique


def cmd_zeros(args: argparse.Namespace, cfg: RunConfig) -> int:
    """Populate or refresh the zero cache by computation or ingestion."""
    if args.action == "compute":
        if cfg.t_max is None:
            raise UsageError("zeros compute needs --t-max")
        table = compute_table(cfg.t_max, workers=cfg.workers)
    else:
        if cfg.zeros_file is None:
            raise UsageError("zeros ingest needs --file")
        table = ingest_table(cfg.zeros_file, cfg.limit)

    discrepancy = verify_count(table, table.max_height)
    path = _cache(args, cfg).store(table)
    print(f"zeros: {len(table)} ({table.source}), complete below {table.max_height:.6f}")
    print(f"verify_count discrepancy at max height: {discrepancy}")
    print(f"cache: {path}")
    return EXIT_OK


def cmd_fluct(args: argparse.Namespace, cfg: RunConfig) -> int:
    """samples.csv, moments.csv and cdf.csv for the window (N, θ)."""
    table = _load_table(args, cfg)
    w = WindowSpec(n=cfg.n, theta=cfg.theta)
    samples = fluctuations(table, w)
    xs = {xi: x_samples(table, w, xi)["X"].to_numpy() for xi in _dedupe(cfg.xis, "xi")}
    samples["X"] = x_samples(table, w, 0.0)["X"].to_numpy() if 0.0 not in xs else xs[0.0]

    f = samples["f"].to_numpy()
    moments = [moment_report(f, name="f")]
    cdfs = [empirical_cdf_vs_gaussian(f, name="f")]
    for xi, x in xs.items():
        moments.append(moment_report(x, name=f"X(xi={xi:g})"))
        cdfs.append(empirical_cdf_vs_gaussian(x, name=f"X(xi={xi:g})"))

    cdf_frames = []
    for report in cdfs:
        frame = report.to_frame()
        frame["ks_statistic"] = report.ks_statistic
        cdf_frames.append(frame)

    meta = _meta("fluct", cfg, table)
    out = cfg.out_dir
    write_csv(samples, out / "samples.csv", meta)
    write_csv(pd.concat([m.to_frame() for m in moments], ignore_index=True),
              out / "moments.csv", meta)
    write_csv(pd.concat(cdf_frames, ignore_index=True), out / "cdf.csv", meta)
    print(f"window N={w.n} H={w.h}: mean f={f.mean():.6f}, KS(f)={cdfs[0].ks_statistic:.6f}")
    return EXIT_OK


def cmd_cov(args: argparse.Namespace, cfg: RunConfig) -> int:
    """cov.csv: correlation of paired fluctuations for every β."""
    if cfg.theta != 1.0:
        raise UsageError(f"cov fixes θ = 1, got θ = {cfg.theta}")
    table = _load_table(args, cfg)
    reports = []
    for beta in _dedupe(cfg.betas, "beta"):
        pairs = two_point_samples(table, cfg.n, beta, with_x=True)
        reports.append(covariance_report(pairs, beta))
        logger.info("beta=%g: corr_f=%.4f target=%.4f", beta, reports[-1].corr_f,
                    reports[-1].target)
    write_csv(covariance_frame(reports), cfg.out_dir / "cov.csv", _meta("cov", cfg, table))
    for r in reports:
        print(f"beta={r.beta:g} offset={r.offset} corr_f={r.corr_f:.4f} target={r.target:.4f}")
    return EXIT_OK


def cmd_expsum(args: argparse.Namespace, cfg: RunConfig) -> int:
    """expsum.csv: the exponential-sum battery and its fitted constant."""
    ks = tuple(args.k) if args.k else None
    primes = tuple(args.primes) if args.primes else None
    battery = run_battery(
        seed=cfg.seed,
        ks=ks or (1_000, 10_000, 100_000),
        per_k=args.per_k,
        h=args.h,
        primes=primes,
    )
    check = unique_factorization_check(30, 2)
    meta = _meta("expsum", cfg)
    meta["fitted_constant"] = repr(battery.fitted_constant)
    write_csv(battery.frame, cfg.out_dir / "expsum.csv", meta)
    print(f"experiments: {len(battery.frame)}")
    print(f"fitted constant C = {battery.fitted_constant:.6f}")
    print(f"|theta| >= 1/y^n for y=30, n=2: {check.holds} ({check.pairs_checked} pairs)")
    return EXIT_OK


def cmd_selberg(args: argparse.Namespace, cfg: RunConfig) -> int:
    """selberg.csv: S, S_x and the smoothed proxy at the evaluation points."""
    table = _load_table(args, cfg)
    w = WindowSpec(n=cfg.n, theta=cfg.theta)
    frames = []
    for x in _dedupe(cfg.x_cutoffs, "x"):
        comparison = selberg_comparison(table, w, x)
        frame = comparison.frame
        frame.insert(0, "x", x)
        frames.append(frame)
        print(f"x={x:g}: Var(S - S_x)/Var(S) = {comparison.variance_ratio:.4f}")
    write_csv(pd.concat(frames, ignore_index=True), cfg.out_dir / "selberg.csv",
              _meta("selberg", cfg, table))
    return EXIT_OK


def cmd_grid(args: argparse.Namespace, cfg: RunConfig) -> int:
    """grid.csv: predicted ordinates t_k and σ_k."""
    k_hi = args.k_hi if args.k_hi is not None else cfg.n
    grid = predicted_grid(args.k_lo, k_hi, xi=args.xi)
    write_csv(grid.to_frame(), cfg.out_dir / "grid.csv", _meta("grid", cfg))
    return EXIT_OK


def cmd_phasesum(args: argparse.Namespace, cfg: RunConfig) -> int:
    """phasesum.csv: Re Σ p^{is}/p / log log x against (1 - β)₊."""
    frame = phase_sum_trend(_dedupe(cfg.betas, "beta"), tuple(args.cutoffs))
    write_csv(frame, cfg.out_dir / "phasesum.csv", _meta("phasesum", cfg))
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zeta-fluct",
        description="Fluctuations of Riemann zeta zeros: zero tables, statistics, CSV reports.",
        epilog=__doc__.split("CSV schemas:", 1)[1] if __doc__ else None,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, default=None, help="key=value config file")
    parser.add_argument("--zeros-cache", type=Path, default=None,
                        help=f"Zero cache directory (overrides ${CACHE_ENV_VAR})")
    parser.add_argument("--out", type=Path, default=None, help="Directory for CSV reports")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    zeros = sub.add_parser("zeros", help="Compute or ingest the zero table")
    zeros.add_argument("action", choices=("compute", "ingest"))
    zeros.add_argument("--t-max", type=float, default=None, help="Compute zeros below this height")
    zeros.add_argument("--workers", type=int, default=None, help="Processes for computation")
    zeros.add_argument("--file", dest="zeros_file", type=Path, default=None, help="Table to ingest")
    zeros.add_argument("--limit", type=int, default=None, help="Zeros to ingest")
    zeros.set_defaults(func=cmd_zeros)

    def window(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, default=None, help="Window base index N")
        p.add_argument("--theta", type=float, default=None, help="Window exponent θ ∈ (1/2, 1]")

    fluct = sub.add_parser("fluct", help="samples.csv, moments.csv, cdf.csv")
    window(fluct)
    fluct.add_argument("--xis", type=str, default=None, help="Comma-separated ξ values")
    fluct.set_defaults(func=cmd_fluct)

    cov = sub.add_parser("cov", help="cov.csv for a list of β")
    window(cov)
    cov.add_argument("--betas", type=str, default=None, help="Comma-separated β > 0")
    cov.set_defaults(func=cmd_cov)

    expsum = sub.add_parser("expsum", help="Exponential-sum battery (expsum.csv)")
    expsum.add_argument("--seed", type=int, default=None)
    expsum.add_argument("--k", type=_int_list, default=None, help="Comma-separated K values")
    expsum.add_argument("--h", type=int, default=None, help="Fixed H (H <= K)")
    expsum.add_argument("--primes", type=_int_list, default=None, help="Fixed prime tuple")
    expsum.add_argument("--per-k", type=int, default=40, help="Experiments per K")
    expsum.set_defaults(func=cmd_expsum)

    selberg = sub.add_parser("selberg", help="selberg.csv: S against S_x")
    window(selberg)
    selberg.add_argument("--x", dest="x_cutoffs", type=str, default=None,
                         help="Comma-separated cutoffs x (primes up to x³)")
    selberg.set_defaults(func=cmd_selberg)

    grid = sub.add_parser("grid", help="grid.csv: t_k and σ_k")
    grid.add_argument("--k-lo", type=int, default=1)
    grid.add_argument("--k-hi", type=int, default=None)
    grid.add_argument("--xi", type=float, default=0.0)
    grid.set_defaults(func=cmd_grid)

    phasesum = sub.add_parser("phasesum", help="phasesum.csv: prime phase-sum trend")
    phasesum.add_argument("--betas", type=str, default=None)
    phasesum.add_argument("--cutoffs", type=_float_list, default=[1e4, 1e5, 1e6])
    phasesum.set_defaults(func=cmd_phasesum)
    return parser


_CONFIG_KEYS = ("t_max", "workers", "zeros_file", "limit", "n", "theta", "xis", "betas",
                "x_cutoffs", "seed")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    func: Callable[[argparse.Namespace, RunConfig], int] = args.func
    try:
        overrides = {key: getattr(args, key, None) for key in _CONFIG_KEYS}
        overrides["out_dir"] = args.out
        try:
            cfg = load_config(args.config, **overrides)
        except ValidationError:
            raise
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return func(args, cfg)
    except (ValidationError, UsageError, DomainError) as exc:
        print(f"zeta-fluct {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"zeta-fluct {args.command}: file not found: {exc.filename or exc}",
              file=sys.stderr)
        return EXIT_USAGE
    except ZeroTableParseError as exc:
        print(f"zeta-fluct {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CoverageError as exc:
        print(f"zeta-fluct {args.command}: insufficient zero coverage: {exc}", file=sys.stderr)
        return EXIT_COVERAGE
    except ValueError as exc:
        logger.exception("Command %s failed", args.command)
        print(f"zeta-fluct {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
