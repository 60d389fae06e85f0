"""
Fluctuation samples, Gaussian comparison reports and the two-point statistics.

SLOs:
- Correctness: Exact cases (f = 0 on a predicted table, offset 0 gives ρ = 1) reproduced
- Correctness: Counting reduction P{f > ξ} = P{N(g) <= k - 1/2} holds exactly per window
- Performance: Statistical acceptance at N = 1e5 marked slow (needs ~2e5 zeros)

Error Handling: raise_and_propagate
- CoverageError naming the required height when a window exceeds the table
- DegenerateSampleError for empty, short or constant samples
"""

import math

import numpy as np
import pandas as pd
import pytest

from zeta_fluctuations.core.predictor import COUNTING_CONSTANT_T, GFunction, solve_t
from zeta_fluctuations.data.schema import WindowSpec
from zeta_fluctuations.data.zero_table import ZeroTable
from zeta_fluctuations.errors import CoverageError, DegenerateSampleError, DomainError
from zeta_fluctuations.statistics.reports import CovarianceReport, covariance_frame
from zeta_fluctuations.statistics.sampler import (
    S_GRID,
    counting_equivalence,
    covariance_report,
    empirical_cdf_vs_gaussian,
    fluctuations,
    joint_moment_report,
    moment_report,
    s_moment_report,
    sample_indices,
    selberg_comparison,
    two_point_samples,
    x_odd_moment_trend,
    x_samples,
)


@pytest.fixture(scope="module")
def predicted_table() -> ZeroTable:
    """Synthetic table whose zeros sit exactly on the predicted ordinates."""
    zeros = np.asarray(solve_t(np.arange(1, 3001)))
    return ZeroTable(zeros=zeros, source="ingested", max_height=float(zeros[-1]))


class TestSampleIndices:
    def test_window_atoms(self):
        assert sample_indices(WindowSpec(n=10, theta=1.0)).tolist() == list(range(10, 20))

    def test_coverage(self, table_100):
        with pytest.raises(CoverageError) as exc:
            sample_indices(WindowSpec(n=200, theta=1.0), table_100)
        assert exc.value.required_count == 399
        assert exc.value.required_height > table_100.max_height


class TestFluctuations:
    def test_zero_on_predicted_table(self, predicted_table):
        frame = fluctuations(predicted_table, WindowSpec(n=1000, theta=1.0))
        assert list(frame.columns) == ["k", "gamma", "t", "sigma", "f"]
        assert len(frame) == 1000
        np.testing.assert_allclose(frame["f"], 0.0, atol=1e-9)

    def test_real_zeros(self, table_10k):
        frame = fluctuations(table_10k, WindowSpec(n=1000, theta=1.0))
        assert frame["f"].abs().max() < 10.0
        assert abs(frame["f"].mean()) < 0.5

    def test_x_samples(self, table_10k):
        frame = x_samples(table_10k, WindowSpec(n=1000, theta=0.8), xi=1.0)
        assert list(frame.columns) == ["k", "t", "g", "S", "X"]
        assert np.all(frame["g"] > frame["t"])
        expected = math.sqrt(2.0) * math.pi * frame["S"] / np.sqrt(np.log(np.log(frame["t"])))
        np.testing.assert_allclose(frame["X"], expected)

    def test_x_at_grid_points_is_half_integer_lattice(self, table_10k):
        s = x_samples(table_10k, WindowSpec(n=1000, theta=1.0), xi=0.0)["S"].to_numpy()
        np.testing.assert_allclose(s - np.floor(s), 0.5, atol=1e-9)

    def test_x_samples_coverage(self, table_100):
        with pytest.raises(CoverageError):
            x_samples(table_100, WindowSpec(n=90, theta=1.0))


class TestReports:
    def test_point_mass_ks(self):
        report = empirical_cdf_vs_gaussian(np.zeros(1000))
        assert report.ks_statistic == pytest.approx(0.5)
        assert len(report.rows) == len(S_GRID)
        assert report.row("0").empirical == 1.0
        assert report.row("0").target == pytest.approx(0.5)

    def test_normal_sample_ks(self):
        sample = np.random.default_rng(7).standard_normal(100_000)
        report = empirical_cdf_vs_gaussian(sample, name="normal")
        assert report.ks_statistic < 0.01
        assert report.max_deviation < 0.01

    def test_moments_of_normal_sample(self):
        sample = np.random.default_rng(11).standard_normal(200_000)
        report = moment_report(sample, orders=range(5))
        assert report.row("0").empirical == 1.0
        assert report.row("2").empirical == pytest.approx(1.0, abs=0.02)
        assert report.row("4").target == 3.0
        assert report.row("4").empirical == pytest.approx(3.0, abs=0.1)

    def test_frame_columns(self):
        frame = moment_report(np.arange(5.0), orders=(1, 2), name="f").to_frame()
        assert list(frame.columns) == [
            "sample", "kind", "parameter", "empirical", "target", "deviation", "n_samples"
        ]
        assert frame["empirical"].tolist() == [2.0, 6.0]

    def test_empty(self):
        with pytest.raises(DegenerateSampleError):
            moment_report(np.array([]))
        with pytest.raises(DegenerateSampleError):
            empirical_cdf_vs_gaussian([])

    def test_unknown_row(self):
        with pytest.raises(KeyError):
            moment_report(np.ones(3), orders=(1,)).row("7")


class TestTwoPoint:
    def test_columns_and_offset(self, table_10k):
        pairs = two_point_samples(table_10k, 1000, beta=1.0)
        assert list(pairs.columns) == ["k1", "k2", "f1", "f2"]
        assert pairs.attrs["offset"] == math.floor(math.log(1000))
        assert (pairs["k2"] - pairs["k1"]).eq(6).all()
        assert len(pairs) == 1000

    def test_offset_zero_is_perfectly_correlated(self, table_10k):
        pairs = two_point_samples(table_10k, 1000, beta=0.5, offset=0)
        report = covariance_report(pairs, beta=0.5)
        assert report.offset == 0
        assert report.corr_f == pytest.approx(1.0)
        assert report.target == 0.5

    def test_with_x(self, table_10k):
        pairs = two_point_samples(table_10k, 1000, beta=2.0, with_x=True)
        report = covariance_report(pairs, beta=2.0)
        assert report.corr_x is not None
        assert -1.0 <= report.corr_x <= 1.0
        assert report.target == 0.0

    def test_too_few_pairs(self, table_10k):
        pairs = two_point_samples(table_10k, 100, beta=1.0)
        with pytest.raises(DegenerateSampleError):
            covariance_report(pairs, beta=1.0)

    def test_constant_sample(self):
        pairs = pd.DataFrame({"k1": range(1000), "k2": range(1000), "f1": 1.0, "f2": 2.0})
        with pytest.raises(DegenerateSampleError):
            covariance_report(pairs, beta=1.0)

    def test_coverage(self, table_100):
        with pytest.raises(CoverageError):
            two_point_samples(table_100, 60, beta=1.0)

    def test_joint_moments(self, table_10k):
        pairs = two_point_samples(table_10k, 1000, beta=0.5)
        report = joint_moment_report(pairs, [(0, 0), (1, 1), (2, 2)], beta=0.5)
        assert report.row("0,0").empirical == 1.0
        assert report.row("1,1").empirical == pytest.approx(
            covariance_report(pairs, beta=0.5).product_moment_f
        )
        assert report.row("2,2").target == pytest.approx(1.5)

    def test_joint_order_guard(self, table_10k):
        pairs = two_point_samples(table_10k, 1000, beta=0.5)
        with pytest.raises(DomainError):
            joint_moment_report(pairs, [(4, 3)], beta=0.5)

    def test_covariance_frame(self):
        reports = [
            CovarianceReport(beta=b, offset=1, n_pairs=10, corr_f=0.5, product_moment_f=0.4)
            for b in (0.5, 2.0)
        ]
        frame = covariance_frame(reports)
        assert frame["beta"].tolist() == [0.5, 2.0]
        assert frame["target"].tolist() == [0.5, 0.0]
        assert frame["deviation"].tolist() == [0.0, 0.5]


class TestCountingEquivalence:
    @pytest.mark.parametrize("xi", [-1.0, 0.0, 1.0])
    def test_holds(self, table_10k, xi):
        result = counting_equivalence(table_10k, WindowSpec(n=1000, theta=1.0), xi)
        assert result.holds
        assert result.window_size == 1000
        assert 0.0 < result.probability < 1.0

    def test_probability_decreases_in_xi(self, table_10k):
        w = WindowSpec(n=1000, theta=1.0)
        probs = [counting_equivalence(table_10k, w, xi).probability for xi in (-1.0, 0.0, 1.0)]
        assert probs[0] > probs[1] > probs[2]


class TestUnbiasedPrediction:
    def test_eleven_eighths_beats_seven_eighths(self, table_10k):
        k = np.arange(1000, 5001, dtype=np.float64)
        gamma = table_10k.gammas(k.astype(np.int64))
        unbiased = float(np.mean(gamma - np.asarray(GFunction()(k))))
        shifted_g = GFunction(counting_constant=COUNTING_CONSTANT_T)
        shifted = float(np.mean(gamma - np.asarray(shifted_g(k))))
        assert abs(unbiased) < abs(shifted)


class TestSMoments:
    def test_second_moment_order_of_magnitude(self, table_10k):
        report = s_moment_report(table_10k, WindowSpec(n=2000, theta=1.0), n_max=2)
        assert report.row("2").target == pytest.approx(1.0 / (2.0 * math.pi**2))
        assert 0.2 < report.row("2").empirical / report.row("2").target < 5.0

    def test_odd_trend(self, table_10k):
        frame = x_odd_moment_trend(table_10k, [500, 1000, 2000], theta=1.0)
        assert frame["n"].tolist() == [500, 1000, 2000]
        assert frame["h"].tolist() == [500, 1000, 2000]
        assert np.all(frame["abs_moment"] >= 0.0)

    def test_even_order_rejected(self, table_10k):
        with pytest.raises(DomainError):
            x_odd_moment_trend(table_10k, [500], p=4)


class TestSelberg:
    def test_frame(self, table_10k):
        comparison = selberg_comparison(table_10k, WindowSpec(n=1000, theta=0.8), x=5.0)
        assert list(comparison.frame.columns) == ["k", "t", "S", "S_x", "S_x_weighted"]
        assert comparison.variance_ratio >= 0.0
        assert np.isfinite(comparison.weighted_variance_ratio)

    @pytest.mark.slow
    def test_dirichlet_proxy_explains_variance(self, large_table):
        comparison = selberg_comparison(large_table, WindowSpec(n=10_000, theta=1.0), x=10.0)
        assert comparison.variance_ratio < 0.7


@pytest.fixture(scope="module")
def window_1e5() -> WindowSpec:
    return WindowSpec(n=100_000, theta=1.0)


@pytest.mark.slow
class TestAcceptanceAtScale:
    """Statistics at N = 1e5, θ = 1."""

    def test_fluctuation_statistics(self, large_table, window_1e5):
        f = fluctuations(large_table, window_1e5)["f"].to_numpy()
        assert -0.5 < f.mean() < 0.5
        assert 0.45 < np.mean(f > 0.0) < 0.55
        assert empirical_cdf_vs_gaussian(f).ks_statistic < 0.15

    @pytest.mark.parametrize("xi", [-1.0, 1.0])
    def test_x_statistics(self, large_table, window_1e5, xi):
        x = x_samples(large_table, window_1e5, xi)["X"].to_numpy()
        var = float(np.var(x))
        assert 0.5 < var < 1.5
        assert 2.0 < float(np.mean((x - x.mean()) ** 4)) / var**2 < 4.5

    def test_ks_decreases_with_height(self, large_table, window_1e5):
        ks = [
            empirical_cdf_vs_gaussian(fluctuations(large_table, w)["f"]).ks_statistic
            for w in (WindowSpec(n=1000, theta=1.0), WindowSpec(n=10_000, theta=1.0), window_1e5)
        ]
        assert ks[2] < ks[1] < ks[0]

    def test_correlation_decays_with_offset(self, large_table, window_1e5):
        corr = {
            beta: covariance_report(
                two_point_samples(large_table, window_1e5.n, beta), beta
            ).corr_f
            for beta in (0.25, 0.5, 1.0, 2.0)
        }
        assert corr[2.0] < corr[0.25] - 0.1
        assert corr[1.0] < corr[0.25]
