"""
Predicted ordinates t_k, the normalisation σ and the evaluation-point function g.

SLOs:
- Correctness: main_term(t_k) = k - 1/2 to a residual scaling with the size of k
- Correctness: Finite-difference g'' within 2e-3 of the exact second derivative of t(x)
- Observability: Hypothesis covers ξ-linearity of g over random (x, ξ)

Error Handling: raise_and_propagate
- DomainError for k < 1, t <= e and x below the evaluation range
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zeta_fluctuations.core.predictor import (
    COUNTING_CONSTANT_G,
    COUNTING_CONSTANT_T,
    GFunction,
    g_eval,
    g_second_derivative,
    invert_main_term,
    main_term,
    predicted_grid,
    sigma,
    solve_t,
)
from zeta_fluctuations.errors import DomainError


class TestMainTerm:
    def test_at_two_pi_e(self):
        assert main_term(2.0 * math.pi * math.e) == pytest.approx(COUNTING_CONSTANT_T, abs=1e-15)

    def test_at_hundred(self):
        u = 100.0 / (2.0 * math.pi)
        assert main_term(100.0) == pytest.approx(u * (math.log(u) - 1.0) + 0.875, rel=1e-15)

    def test_array_and_scalar(self):
        out = main_term(np.array([50.0, 500.0]), COUNTING_CONSTANT_G)
        assert isinstance(out, np.ndarray)
        assert isinstance(main_term(50.0), float)

    def test_nonpositive(self):
        with pytest.raises(DomainError):
            main_term(0.0)

    def test_inverse(self):
        x = np.array([0.5, 10.0, 1.0e3, 1.0e6])
        t = invert_main_term(x)
        np.testing.assert_allclose(main_term(t), x, rtol=1e-13)

    def test_inverse_below_branch(self):
        with pytest.raises(DomainError):
            invert_main_term(-0.2)


class TestSolveT:
    @pytest.mark.parametrize("k", [1, 10, 1_000, 100_000, 1_000_000])
    def test_residual(self, k):
        t = solve_t(k)
        assert t > 2.0 * math.pi
        tolerance = 1e-10 * max(1.0, k / 1.0e4)
        assert abs(main_term(t) - (k - 0.5)) < tolerance

    def test_strictly_increasing(self):
        t = solve_t(np.arange(1, 10_001))
        assert np.all(np.diff(t) > 0.0)

    def test_first_prediction_near_first_zero(self, reference_zeros):
        assert abs(solve_t(1) - reference_zeros[0]) < 1.0

    def test_growth_against_leading_asymptotic(self):
        def ratio(x: float) -> float:
            return solve_t(int(x)) / (2.0 * math.pi * x / math.log(x))

        # t ~ 2πx/log x converges from above at a log-log rate
        assert 1.3 < ratio(1e5) < 1.45
        assert 1.0 < ratio(1e7) < ratio(1e5)

    def test_below_one(self):
        with pytest.raises(DomainError):
            solve_t(0)


class TestSigma:
    def test_at_e_to_the_e(self):
        assert sigma(math.e**math.e) == pytest.approx(math.sqrt(2.0) / math.e, rel=1e-14)

    def test_decreasing(self):
        t = np.linspace(100.0, 1.0e6, 1000)
        assert np.all(np.diff(sigma(t)) < 0.0)

    @pytest.mark.parametrize("t", [math.e, 2.0, 0.5])
    def test_domain(self, t):
        with pytest.raises(DomainError):
            sigma(t)


class TestPredictedGrid:
    def test_fields(self):
        grid = predicted_grid(10, 19, xi=1.0)
        assert len(grid) == 10
        np.testing.assert_array_equal(grid.k, np.arange(10, 20))
        np.testing.assert_allclose(grid.evaluation_points, grid.t + grid.sigma)
        frame = grid.to_frame()
        assert list(frame.columns) == ["k", "t_k", "sigma_k"]

    def test_read_only(self):
        grid = predicted_grid(1, 5)
        with pytest.raises(ValueError):
            grid.t[0] = 0.0

    def test_csv(self, tmp_path):
        path = tmp_path / "out" / "grid.csv"
        predicted_grid(1, 20).to_csv(path)
        assert path.read_text(encoding="utf-8").splitlines()[0] == "k,t_k,sigma_k"

    def test_invalid_range(self):
        with pytest.raises(DomainError):
            predicted_grid(5, 4)


class TestGFunction:
    def test_unbiased_constant(self):
        g = GFunction()
        assert g.counting_constant == COUNTING_CONSTANT_G
        assert g(100.0) == pytest.approx(float(invert_main_term(100.0, COUNTING_CONSTANT_G)))

    def test_below_domain(self):
        g = GFunction()
        with pytest.raises(DomainError):
            g(float(g.x0 - 1))

    @settings(max_examples=50, deadline=None)
    @given(
        x=st.floats(min_value=20.0, max_value=1.0e7),
        xi=st.floats(min_value=-3.0, max_value=3.0),
    )
    def test_linear_in_xi(self, x, xi):
        t = g_eval(x, 0.0)
        s = float(sigma(t))
        assert g_eval(x, xi) == pytest.approx(t + xi * s, rel=1e-13, abs=1e-12)

    def test_symmetric_offsets(self):
        x = 5_000.0
        t = g_eval(x, 0.0)
        assert g_eval(x, 1.0) - g_eval(x, -1.0) == pytest.approx(2.0 * sigma(t), rel=1e-9)

    @pytest.mark.parametrize("x", [1.0e3, 1.0e4, 1.0e5, 1.0e6])
    def test_concave(self, x):
        assert g_second_derivative(x).finite_difference < 0.0

    @pytest.mark.parametrize("x", [1.0e3, 1.0e5, 1.0e6])
    def test_matches_exact_second_derivative(self, x):
        curv = GFunction(counting_constant=COUNTING_CONSTANT_T).second_derivative(x)
        assert curv.finite_difference / curv.t_second_derivative == pytest.approx(1.0, abs=2e-3)

    def test_asymptotic_ratio_drifts_to_one(self):
        # ratio to -2π/(x log²x) is about 1.34 at 1e5 and decreases slowly
        r5 = g_second_derivative(1.0e5).ratio
        r6 = g_second_derivative(1.0e6).ratio
        r8 = g_second_derivative(1.0e8).ratio
        assert 1.0 < r8 < r6 < r5 < 1.45

    def test_second_derivative_range(self):
        with pytest.raises(DomainError):
            g_second_derivative(500.0)

    def test_third_difference_positive(self):
        assert GFunction().third_difference(1.0e6) > 0.0
