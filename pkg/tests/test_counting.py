"""
Zero counting N(T), S(T) and the table completeness check.

SLOs:
- Correctness: 100% - Half counts at zeros, exact tautology N(T) = M(T) + S(T)
- Correctness: verify_count within ±2 on 100 random heights below 1e4
- Observability: Suspect tables raise SuspectTableWarning, never an error

Error Handling: raise_and_propagate
- HeightExceededError above the table's completeness height
- DomainError for S(T) below T = 10
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zeta_fluctuations.core.counting import count_zeros, s_of_t, verify_count
from zeta_fluctuations.core.predictor import main_term
from zeta_fluctuations.data.zero_table import ZeroTable
from zeta_fluctuations.errors import DomainError, HeightExceededError, SuspectTableWarning


class TestCountZeros:
    def test_below_first_zero(self, table_10k):
        assert count_zeros(table_10k, 10.0) == 0.0

    def test_half_count_at_zero(self, table_10k):
        assert count_zeros(table_10k, table_10k.gamma(3)) == 2.5

    def test_just_above_zero(self, table_10k):
        assert count_zeros(table_10k, table_10k.gamma(5) + 1e-9) == 5.0

    def test_hundred(self, table_10k):
        assert count_zeros(table_10k, 100.0) == 29.0

    def test_vectorised(self, table_10k):
        out = count_zeros(table_10k, np.array([10.0, 100.0, 10_000.0]))
        np.testing.assert_array_equal(out, [0.0, 29.0, 10142.0])

    def test_height_exceeded(self, table_100):
        with pytest.raises(HeightExceededError):
            count_zeros(table_100, table_100.max_height + 1.0)


class TestSOfT:
    @settings(max_examples=100, deadline=None)
    @given(st.floats(min_value=20.0, max_value=10_000.0))
    def test_tautology(self, table_10k, t):
        assert s_of_t(table_10k, t) + main_term(t) == count_zeros(table_10k, t)

    def test_bounded_below_ten_thousand(self, table_10k):
        t = np.linspace(10.0, 10_000.0, 10_000)
        assert np.max(np.abs(s_of_t(table_10k, t))) < 2.0

    def test_mean_near_zero(self, table_10k):
        t = np.linspace(5_000.0, 6_000.0, 10_000)
        assert abs(float(np.mean(s_of_t(table_10k, t)))) < 0.5

    def test_unit_jump_at_zeros(self, table_10k):
        gammas = table_10k.gammas(np.arange(1, 51))
        jumps = np.asarray(s_of_t(table_10k, gammas + 1e-9)) - np.asarray(
            s_of_t(table_10k, gammas - 1e-9)
        )
        np.testing.assert_allclose(jumps, 1.0, atol=1e-6)

    def test_below_ten(self, table_10k):
        with pytest.raises(DomainError):
            s_of_t(table_10k, 9.0)


class TestVerifyCount:
    def test_random_heights(self, table_10k):
        rng = np.random.default_rng(0)
        for t in rng.uniform(20.0, 10_000.0, size=100).tolist():
            assert -2 <= verify_count(table_10k, t) <= 2

    def test_at_hundred(self, table_10k):
        assert verify_count(table_10k, 100.0) in (-1, 0, 1)

    def test_missing_zeros_warn(self, table_10k):
        truncated = ZeroTable(
            zeros=table_10k.gammas(np.arange(1, 11)), source="ingested", max_height=100.0
        )
        with pytest.warns(SuspectTableWarning):
            assert verify_count(truncated, 100.0) == -19
