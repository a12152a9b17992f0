import numpy as np
import pytest

from gloc import (
    DIVERGENT,
    LaplaceQuery,
    NonPeriodic,
    Periodic,
    ScenarioConfig,
    Scheme,
    is_divergent,
    laplace_interference,
    mean_interference,
)
from gloc.montecarlo import empirical_mean_interference


def fd_mean_from_laplace(x, v, scheme, cfg, p_a, h):
    """Richardson-extrapolated forward difference of the transform at s -> 0."""

    def one_sided(step):
        q = LaplaceQuery(s=step, x=x, v=v, scheme=scheme, p_a=p_a)
        return (1.0 - laplace_interference(q, cfg)) / step

    return 2.0 * one_sided(h) - one_sided(2.0 * h)


class TestMeanInterference:
    def test_empty_process(self, cfg):
        assert mean_interference(150.0, 0.0, Scheme.SLP, cfg, NonPeriodic(0.0)) == 0.0

    def test_divergent_inside_probe_segment(self, cfg):
        assert is_divergent(mean_interference(0.0, 0.0, Scheme.SLP, cfg, NonPeriodic(0.25)))

    def test_divergent_at_cochannel_centers(self):
        cfg = ScenarioConfig(n_ar=3)
        tm = NonPeriodic(0.25)
        period = cfg.n_ar * cfg.d_segment
        for c in (-2, -1, 1, 2):
            assert is_divergent(mean_interference(c * period, 0.0, Scheme.SLP, cfg, tm))
        # midway between co-channel segments the mean is finite
        val = mean_interference(period / 2, 0.0, Scheme.SLP, cfg, tm)
        assert not is_divergent(val) and val > 0

    def test_per_lane_scheme_converges_inside_segment(self, cfg):
        val = mean_interference(0.0, 0.0, Scheme.MLP, cfg, NonPeriodic(0.25))
        assert not is_divergent(val) and val > 0

    def test_monte_carlo_oracle(self):
        cfg = ScenarioConfig(n_ar=3)
        tm = NonPeriodic(0.25)
        analytic = mean_interference(63.0, 0.0, Scheme.SLP, cfg, tm)
        est = empirical_mean_interference(63.0, 0.0, Scheme.SLP, cfg, tm, 10_000, seed=5)
        assert abs(analytic - est.mean) <= 3.0 * est.std_error

    @pytest.mark.parametrize(
        "scheme,x,v,n_ar,seed",
        [
            (Scheme.SLP, 63.0, 0.0, 3, 0),
            (Scheme.SLP, 150.0, 0.0, 10, 1),
            (Scheme.MLP, 150.0, 0.0, 10, 2),
            (Scheme.MLP, 100.0, -10.0, 5, 3),
            (Scheme.MLP, 0.0, 0.0, 10, 4),
        ],
    )
    def test_matches_transform_derivative(self, scheme, x, v, n_ar, seed):
        # Campbell value vs finite difference of the Laplace transform at 0
        cfg = ScenarioConfig(n_ar=n_ar)
        tm = NonPeriodic(0.25)
        campbell = mean_interference(x, v, scheme, cfg, tm)
        assert not is_divergent(campbell)
        h = 1e-5 / campbell
        fd = fd_mean_from_laplace(x, v, scheme, cfg, 0.25, h)
        assert fd == pytest.approx(campbell, rel=1e-4)

    def test_hardcore_distance_reduces_interference(self):
        # matched densities: widening the exclusion radius lowers the mean
        tm = NonPeriodic(0.25)
        base = ScenarioConfig(n_ar=3, n_lanes=1)
        # receiver near the next co-channel segment so its exclusion ball
        # clips that segment more deeply as d_safe grows
        slp = mean_interference(100.0, 0.0, Scheme.SLP, base, tm)
        mlp21 = mean_interference(100.0, 0.0, Scheme.MLP, base.with_(d_safe=21.0), tm)
        mlp42 = mean_interference(100.0, 0.0, Scheme.MLP, base.with_(d_safe=42.0), tm)
        assert slp > mlp21 > mlp42 > 0
