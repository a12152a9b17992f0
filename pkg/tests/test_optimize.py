import math

import pytest

from gloc import (
    DomainError,
    NonPeriodic,
    Periodic,
    ScenarioConfig,
    Scheme,
    link_metrics,
    optimal_power,
)
from gloc.scenario import linear_to_db


class TestConstants:
    def test_c2_formula(self, cfg):
        res = optimal_power(0.5, cfg, Scheme.MLP, NonPeriodic(0.25))
        expected = cfg.gamma * cfg.sigma_n2 * (cfg.tau * cfg.r_bc) ** cfg.alpha
        assert res.c2 == pytest.approx(expected, rel=1e-12)
        assert linear_to_db(res.c2) == pytest.approx(-78.2, abs=0.1)

    def test_c1_is_power_free(self, cfg):
        a = optimal_power(0.5, cfg, Scheme.MLP, NonPeriodic(0.25))
        b = optimal_power(0.5, cfg.with_(rho_vt=1e-8), Scheme.MLP, NonPeriodic(0.25))
        assert a.c1 == pytest.approx(b.c1, rel=1e-12)

    def test_invariants(self, cfg):
        for delta in (0.1, 0.5, 0.99):
            res = optimal_power(delta, cfg, Scheme.MLP, Periodic())
            assert 0.0 < res.capture_at_opt <= res.c1 <= 1.0
            assert res.rho_opt > 0


class TestBranches:
    def test_loose_floor_uses_ee_peak(self, cfg):
        r2 = optimal_power(0.2, cfg, Scheme.MLP, NonPeriodic(0.25))
        r3 = optimal_power(0.3, cfg, Scheme.MLP, NonPeriodic(0.25))
        assert r2.rho_opt == r3.rho_opt == r2.c2

    def test_tight_floor_uses_constraint(self, cfg):
        res = optimal_power(0.99, cfg, Scheme.MLP, NonPeriodic(0.25))
        assert res.rho_opt == pytest.approx(res.c2 / math.log(1 / 0.99), rel=1e-12)
        assert linear_to_db(res.rho_opt) == pytest.approx(-58.27, abs=0.05)

    def test_continuous_at_branch_point(self, cfg):
        inv_e = math.exp(-1.0)
        lo = optimal_power(inv_e - 1e-9, cfg, Scheme.MLP, NonPeriodic(0.25))
        hi = optimal_power(inv_e + 1e-9, cfg, Scheme.MLP, NonPeriodic(0.25))
        assert lo.rho_opt == pytest.approx(hi.rho_opt, rel=1e-6)
        assert lo.ee_opt == pytest.approx(hi.ee_opt, rel=1e-6)
        assert lo.capture_at_opt == pytest.approx(hi.capture_at_opt, rel=1e-6)

    def test_delta_domain(self, cfg):
        for bad in (0.0, 1.0, -0.2, 1.7):
            with pytest.raises(DomainError):
                optimal_power(bad, cfg, Scheme.SLP, NonPeriodic(0.25))


class TestConsistency:
    def test_scheme_independent_power(self, cfg):
        slp = optimal_power(0.9, cfg, Scheme.SLP, NonPeriodic(0.25))
        mlp = optimal_power(0.9, cfg, Scheme.MLP, NonPeriodic(0.25))
        assert slp.rho_opt == mlp.rho_opt

    def test_matches_link_metrics_at_optimum(self, cfg):
        for delta in (0.25, 0.99):
            res = optimal_power(delta, cfg, Scheme.MLP, NonPeriodic(0.25))
            at_opt = link_metrics(cfg.with_(rho_vt=res.rho_opt), Scheme.MLP, NonPeriodic(0.25))
            assert at_opt.avg_ee_bpj == pytest.approx(res.ee_opt, rel=1e-9)
            assert at_opt.capture.value == pytest.approx(res.capture_at_opt, rel=1e-9)

    def test_optimum_is_ee_maximum_on_constraint_set(self, cfg):
        # no admissible power beats the claimed optimum
        delta = 0.9
        res = optimal_power(delta, cfg, Scheme.MLP, NonPeriodic(0.25))
        for factor in (0.5, 0.8, 1.25, 2.0, 10.0):
            rho = res.rho_opt * factor
            m = link_metrics(cfg.with_(rho_vt=rho), Scheme.MLP, NonPeriodic(0.25))
            feasible = m.capture.value >= delta * res.c1 - 1e-12
            if feasible:
                assert m.avg_ee_bpj <= res.ee_opt * (1 + 1e-9)

    def test_zero_noise_degenerates(self, cfg):
        res = optimal_power(0.5, cfg.with_(sigma_n2=0.0), Scheme.MLP, NonPeriodic(0.25))
        assert res.rho_opt == 0.0
        assert math.isinf(res.ee_opt)
