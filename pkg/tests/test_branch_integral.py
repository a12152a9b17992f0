import math

import numpy as np
import pytest
from scipy import integrate

import gloc.analytic.hyper as hyper
from gloc import PrecisionLoss, ScenarioConfig, branch_integral
from gloc.analytic.hyper import hyper_primitive, rational_integrand

TAU, ALPHA = 490.0, 1.68


def quad_oracle(a, b, s_rho):
    val, _ = integrate.quad(
        rational_integrand, a, b, args=(s_rho, TAU, ALPHA), epsabs=1e-300, epsrel=1e-12, limit=300
    )
    return val


class TestBranchIntegral:
    def test_empty_interval(self):
        assert branch_integral(21.0, 21.0, 1e6, TAU, ALPHA) == 0.0

    def test_zero_strength(self):
        assert branch_integral(0.0, 100.0, 0.0, TAU, ALPHA) == 0.0

    def test_reference_case_against_quadrature(self, cfg):
        # interval one segment away from a 150 m link at the default threshold
        s_rho = cfg.gamma * (cfg.tau * 150.0) ** cfg.alpha
        got = branch_integral(21.0, 63.0, s_rho, TAU, ALPHA)
        ref = quad_oracle(21.0, 63.0, s_rho)
        assert got == pytest.approx(ref, rel=1e-8)

    def test_result_bounded_by_width(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a = rng.uniform(0.0, 500.0)
            b = a + rng.uniform(0.0, 500.0)
            s_rho = 10.0 ** rng.uniform(-6, 12)
            val = branch_integral(a, b, s_rho, TAU, ALPHA)
            assert -1e-12 <= val <= (b - a) * (1 + 1e-9)

    def test_monotone_in_strength(self):
        vals = [branch_integral(10.0, 60.0, s, TAU, ALPHA) for s in (1e2, 1e4, 1e6, 1e8)]
        assert all(x < y for x, y in zip(vals, vals[1:]))

    def test_randomized_quadrature_oracle(self):
        rng = np.random.default_rng(17)
        worst = 0.0
        for _ in range(500):
            a = rng.uniform(0.0, 2000.0)
            b = a + 10.0 ** rng.uniform(-2, 3.5)
            s_rho = 10.0 ** rng.uniform(-4, 12)
            got = branch_integral(a, b, s_rho, TAU, ALPHA)
            ref = quad_oracle(a, b, s_rho)
            if ref > 0:
                worst = max(worst, abs(got - ref) / ref)
        assert worst <= 1e-8

    def test_tail_series_regime(self):
        # deep in the decayed tail the 2F1 difference would cancel completely
        a, b = 40_000.0, 40_042.0
        for s_rho in (1e-3, 1.0, 1e3):
            got = branch_integral(a, b, s_rho, TAU, ALPHA)
            ref = quad_oracle(a, b, s_rho)
            assert got == pytest.approx(ref, rel=1e-10)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            branch_integral(-1.0, 5.0, 1.0, TAU, ALPHA)
        with pytest.raises(ValueError):
            branch_integral(5.0, 1.0, 1.0, TAU, ALPHA)
        with pytest.raises(ValueError):
            branch_integral(1.0, 5.0, -1.0, TAU, ALPHA)


class TestPrimitive:
    def test_zero_at_origin(self):
        assert hyper_primitive(0.0, 123.0, TAU, ALPHA) == 0.0

    def test_derivative_matches_integrand(self):
        # centered finite difference of the antiderivative vs the integrand
        for t in (1.0, 7.0, 42.0, 150.0, 900.0):
            for s_rho in (1e2, 1e5, 1e8):
                h = t * 1e-6
                fd = (hyper_primitive(t + h, s_rho, TAU, ALPHA) - hyper_primitive(t - h, s_rho, TAU, ALPHA)) / (2 * h)
                f = rational_integrand(np.array(t), s_rho, TAU, ALPHA)
                assert fd == pytest.approx(float(f), rel=1e-6)


class TestPrecisionLoss:
    def test_raised_when_routes_disagree(self, monkeypatch):
        # a finite but wildly wrong primitive forces arbitration to fail
        monkeypatch.setattr(hyper, "hyp2f1", lambda *args: np.full(np.shape(args[-1]), 1e9))
        with pytest.raises(PrecisionLoss):
            branch_integral(10.0, 50.0, 1e6, TAU, ALPHA)

    def test_degenerate_primitive_falls_back_silently(self, monkeypatch):
        monkeypatch.setattr(hyper, "hyp2f1", lambda *args: np.full(np.shape(args[-1]), np.nan))
        got = branch_integral(10.0, 50.0, 1e6, TAU, ALPHA)
        assert got == pytest.approx(quad_oracle(10.0, 50.0, 1e6), rel=1e-10)
