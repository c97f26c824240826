import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from qosm.cascade import first_threshold
from qosm.demand import (
    Exponential,
    MarketConfig,
    PowerLaw,
    Rational,
    TruncatedLinear,
    UnsupportedDistributionError,
)
from qosm.equilibrium import Sensitivity, classify_lhs, rhs
from qosm.regime import (
    Regime,
    RegimeError,
    classify_regime,
    competitive_vs_monopoly,
    derivative_sign_says_dc,
    is_dc,
    log_w,
    optimal_quality,
    solvable_interval,
    w_derivative_sign,
    w_shape,
)

S23 = 2.0 / 3.0


def golden_argmin(alpha, s):
    """Golden-section argmin of w over log b, bracketed by a coarse scan."""
    f = PowerLaw(alpha)
    xs = np.linspace(1e-3, 60, 6001)
    vals = [math.log(w_shape(f, s, math.exp(x))) if x < 700 / max(1, alpha + 1) else np.inf
            for x in xs]
    i = int(np.argmin(vals))
    res = minimize_scalar(
        lambda x: math.log(w_shape(f, s, math.exp(x))),
        bracket=(xs[max(i - 1, 0)], xs[i], xs[i + 1]), method="golden", tol=1e-12,
    )
    return math.exp(res.x)


def random_dc(rng):
    while True:
        alpha = rng.uniform(-4, 3)
        s = rng.uniform(0.05, 0.95)
        if is_dc(alpha, s) and optimal_quality(PowerLaw(alpha), s) < 1e20:
            return alpha, s


class TestWShape:
    def test_value(self):
        assert w_shape(PowerLaw(0.0), 0.5, 4.0) == pytest.approx(2 / math.sqrt(3), rel=1e-15)

    @pytest.mark.parametrize("alpha, s", [(-2.5, S23), (1.0, 0.5), (-1.0, 0.3), (2.0, 0.9)])
    def test_blows_up_near_one(self, alpha, s):
        f = PowerLaw(alpha)
        # w ~ (b - 1)^-(1-s) as b -> 1+
        near = [w_shape(f, s, 1 + e) for e in (1e-4, 1e-8, 1e-12)]
        assert near[0] < near[1] < near[2]
        assert near[2] / near[1] == pytest.approx(1e4 ** (1 - s), rel=1e-3)

    def test_min_at_q0(self):
        f, s = PowerLaw(-2.5), S23
        q0 = optimal_quality(f, s)
        assert q0 == pytest.approx(1.4521, rel=1e-4)
        for b in (1.3, 1.4, 1.5, 1.6):
            assert w_shape(f, s, b) > w_shape(f, s, q0)

    def test_log_w_agrees(self):
        for alpha in (-2.5, -1.0, -0.5, 0.0, 2.0):
            for b in (1.1, 3.0, 1e4):
                assert log_w(alpha, 0.6, math.log(b)) == pytest.approx(
                    math.log(w_shape(PowerLaw(alpha), 0.6, b)), rel=1e-10, abs=1e-12
                )

    def test_truncated_rejected(self):
        with pytest.raises(UnsupportedDistributionError):
            w_shape(TruncatedLinear(3), 0.5, 2.0)

    @pytest.mark.parametrize("alpha, s", [(1.0, 0.5), (0.0, 0.4), (3.0, 0.7), (-0.5, 1 / 3)])
    def test_uc_strictly_decreasing(self, alpha, s):
        assert not is_dc(alpha, s)
        grid = np.geomspace(1.01, 1e6, 400)
        w = [w_shape(PowerLaw(alpha), s, b) for b in grid]
        assert np.all(np.diff(w) < 0)


class TestOptimalQuality:
    def test_paris_metro(self):
        assert optimal_quality(PowerLaw(-2.0), 0.5) == pytest.approx(2.0, rel=1e-15)

    def test_log_case(self):
        assert optimal_quality(PowerLaw(-1.0), S23) == pytest.approx(math.exp(0.5), rel=1e-14)

    def test_reference_config(self):
        q0 = optimal_quality(PowerLaw(-2.5), S23)
        assert q0 == pytest.approx((7 / 4) ** (2 / 3), rel=1e-14)
        assert q0 == pytest.approx(golden_argmin(-2.5, S23), rel=1e-6)

    def test_uc_raises(self):
        with pytest.raises(RegimeError):
            optimal_quality(PowerLaw(1.0), 0.5)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_matches_golden_section(self, seed):
        alpha, s = random_dc(np.random.default_rng(seed))
        assert optimal_quality(PowerLaw(alpha), s) == pytest.approx(golden_argmin(alpha, s), rel=1e-6)


class TestClassifyRegime:
    def test_uc(self):
        v = classify_regime(PowerLaw(1.0), Rational(6, 1), 0.5)
        assert v.regime is Regime.UC
        assert v.q0 is None
        assert v.boundary_margin == pytest.approx(0.5 - 2 / 3)

    def test_bdc(self):
        v = classify_regime(PowerLaw(-2.5), Rational(6, 0.7), S23)
        assert v.regime is Regime.BDC
        assert v.sensitivity is Sensitivity.SENSITIVE
        assert v.q0 > 1
        assert math.isinf(v.boundary_margin)

    def test_udc(self):
        assert classify_regime(PowerLaw(-2.5), Rational(2, 1), S23).regime is Regime.UDC

    def test_boundary_is_uc(self):
        # s exactly on (alpha+1)/(alpha+2)
        assert classify_regime(PowerLaw(0.0), Exponential(), 0.5).regime is Regime.UC

    def test_h_does_not_change_uc_dc(self):
        for alpha, s in [(1.0, 0.5), (1.0, 0.8), (-2.0, 0.3)]:
            regimes = {classify_regime(PowerLaw(alpha), h, s).regime.is_dc
                       for h in (Rational(6, 1), Rational(0.5, 1), Exponential())}
            assert len(regimes) == 1


class TestDerivativeOracle:
    def test_grid_agreement_far_b(self):
        alphas = np.linspace(-4, 3, 50)
        ss = np.linspace(0, 1, 52)[1:-1]
        for alpha in alphas:
            for s in ss:
                if alpha > -1 and abs(s - (alpha + 1) / (alpha + 2)) <= 1e-6:
                    continue
                assert derivative_sign_says_dc(alpha, s, log_b=1e4) == is_dc(alpha, s)

    def test_disagreements_at_1e8_are_beyond_q0(self):
        # at b = 1e8 the oracle can only see a minimum that lies below 1e8
        alphas = np.linspace(-4, 3, 50)
        ss = np.linspace(0, 1, 52)[1:-1]
        bad = []
        for alpha in alphas:
            for s in ss:
                if alpha > -1 and abs(s - (alpha + 1) / (alpha + 2)) <= 1e-6:
                    continue
                if derivative_sign_says_dc(alpha, s, math.log(1e8)) != is_dc(alpha, s):
                    bad.append((alpha, s))
                    assert optimal_quality(PowerLaw(alpha), s) > 1e8
        assert len(bad) == 2  # alpha = -1 with s below 1/(1 + ln 1e8)

    def test_sign_matches_finite_difference(self):
        for alpha in (-2.5, -1.0, -0.3, 1.0):
            for s in (0.2, 0.5, 0.8):
                f = PowerLaw(alpha)
                for b in (1.2, 2.0, 10.0, 1e3):
                    fd = w_shape(f, s, b * (1 + 1e-6)) - w_shape(f, s, b * (1 - 1e-6))
                    if abs(fd) > 1e-9 * w_shape(f, s, b):
                        assert np.sign(fd) == w_derivative_sign(alpha, s, math.log(b))


class TestCompetitiveVsMonopoly:
    def test_dc_min_price_below_max_revenue(self):
        f, h, s = PowerLaw(-2.5), Rational(6, 0.7), S23
        cfg = MarketConfig(f, h, s, 0.8 * first_threshold(f, h, s))
        lo, hi = solvable_interval(cfg)
        table = competitive_vs_monopoly(cfg, np.linspace(lo, hi, 400))
        assert table.argmin_price_b < table.argmax_revenue_b
        assert table.argmin_price_b == pytest.approx(optimal_quality(f, s), abs=table.resolution)

    def test_uc_price_decreasing(self):
        cfg = MarketConfig(PowerLaw(1.0), Rational(6, 1), 0.5, 1.0)
        lo, _ = solvable_interval(cfg)
        table = competitive_vs_monopoly(cfg, np.linspace(lo * 1.001, 50, 200))
        assert not np.any(np.isnan(table.price))
        assert np.all(np.diff(table.price) < 0)
        assert np.all(np.diff(table.revenue) > 0)

    def test_single_point(self):
        f, h, s = PowerLaw(-2.5), Rational(6, 0.7), S23
        q0 = optimal_quality(f, s)
        table = competitive_vs_monopoly(MarketConfig(f, h, s, 0.1), [q0])
        assert table.argmin_price_b == table.argmax_revenue_b == q0

    def test_empty_when_unprofitable(self):
        f, h, s = PowerLaw(-2.5), Rational(6, 0.7), S23
        table = competitive_vs_monopoly(MarketConfig(f, h, s, 100.0), [1.2, 1.45, 2.0])
        assert table.empty and table.argmin_price_b is None

    def test_argmins_independent_of_c(self):
        f, h, s = PowerLaw(-2.5), Rational(6, 0.7), S23
        grid = np.linspace(1.05, 2.5, 400)
        a = competitive_vs_monopoly(MarketConfig(f, h, s, 0.3), grid)
        b = competitive_vs_monopoly(MarketConfig(f, h, s, 0.05), grid)
        assert a.argmin_price_b == b.argmin_price_b

    def test_solvable_interval_edges(self):
        f, h, s = PowerLaw(-2.5), Rational(6, 0.7), S23
        cfg = MarketConfig(f, h, s, 0.3)
        lo, hi = solvable_interval(cfg)
        peak = classify_lhs(h, s).peak_value
        assert rhs(f, s, cfg.c, 1.0, lo) == pytest.approx(peak, rel=1e-9)
        assert rhs(f, s, cfg.c, 1.0, hi) == pytest.approx(peak, rel=1e-9)
        assert solvable_interval(cfg.with_c(100.0)) is None
