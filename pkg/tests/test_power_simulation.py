"""Monte Carlo oracle: determinism contract and calibration smoke tests.

Full-resolution agreement between the analytic and simulated routes (1e5
replications over the whole design grid) lives in the acceptance suite;
these tests run at reduced replication counts.
"""

import math

import pytest

import esplan.power as power_mod
from esplan.errors import DomainError
from esplan.measures import OutcomeContext, RelativeRiskValue, RiskDifferenceValue
from esplan.power import (
    SimConfig,
    achieved_power_smd,
    achieved_power_two_proportions,
    simulate_power_smd,
    simulate_power_two_proportions,
)

SMOKE = SimConfig(replications=20_000, seed=42)


class TestDeterminism:
    def test_fixed_seed_bit_identical(self):
        a = simulate_power_smd(0.5, 64, 0.05, SimConfig(replications=5000, seed=42))
        b = simulate_power_smd(0.5, 64, 0.05, SimConfig(replications=5000, seed=42))
        assert a == b

    def test_seed_changes_result(self):
        a = simulate_power_smd(0.5, 64, 0.05, SimConfig(replications=5000, seed=1))
        b = simulate_power_smd(0.5, 64, 0.05, SimConfig(replications=5000, seed=2))
        assert a != b

    def test_chunk_size_cannot_affect_results(self, monkeypatch):
        sim = SimConfig(replications=3000, seed=9)
        baseline = simulate_power_smd(0.3, 41, 0.05, sim)
        monkeypatch.setattr(power_mod, "_CHUNK_TARGET_WORDS", 512)
        assert simulate_power_smd(0.3, 41, 0.05, sim) == baseline

    def test_two_proportions_deterministic(self):
        ctx = OutcomeContext(0.2)
        effect = RiskDifferenceValue(0.1, ctx)
        sim = SimConfig(replications=4000, seed=7)
        assert simulate_power_two_proportions(
            ctx, effect, 150, 0.05, sim
        ) == simulate_power_two_proportions(ctx, effect, 150, 0.05, sim)

    def test_two_proportions_chunk_invariance(self, monkeypatch):
        ctx = OutcomeContext(0.2)
        effect = RiskDifferenceValue(0.1, ctx)
        sim = SimConfig(replications=3000, seed=8)
        baseline = simulate_power_two_proportions(ctx, effect, 37, 0.05, sim)
        monkeypatch.setattr(power_mod, "_CHUNK_TARGET_WORDS", 256)
        assert simulate_power_two_proportions(ctx, effect, 37, 0.05, sim) == baseline


class TestCalibration:
    def test_null_rejection_near_alpha(self):
        rate = simulate_power_smd(0.0, 100, 0.05, SMOKE)
        assert rate == pytest.approx(0.05, abs=0.005)

    def test_agreement_with_analytic(self):
        sim = simulate_power_smd(0.5, 64, 0.05, SMOKE)
        analytic = achieved_power_smd(0.5, 64, 0.05)
        assert sim == pytest.approx(analytic, abs=0.02)

    def test_two_prop_null_rejection_near_alpha(self):
        ctx = OutcomeContext(0.2)
        rate = simulate_power_two_proportions(ctx, RelativeRiskValue(1.0, ctx), 200, 0.05, SMOKE)
        assert rate == pytest.approx(0.05, abs=0.005)

    def test_two_prop_agreement_with_analytic(self):
        ctx = OutcomeContext(0.2)
        effect = RiskDifferenceValue(0.182, ctx)
        sim = simulate_power_two_proportions(ctx, effect, 97, 0.05, SMOKE)
        analytic = achieved_power_two_proportions(ctx, effect, 97, 0.05)
        assert sim >= 0.79
        assert sim == pytest.approx(analytic, abs=0.02)

    def test_power_grows_with_n(self):
        lo = simulate_power_smd(0.4, 30, 0.05, SMOKE)
        hi = simulate_power_smd(0.4, 120, 0.05, SMOKE)
        assert hi > lo


class TestValidation:
    def test_replications_positive(self):
        with pytest.raises(DomainError):
            SimConfig(replications=0)

    def test_seed_range(self):
        with pytest.raises(DomainError):
            SimConfig(seed=-1)
        with pytest.raises(DomainError):
            SimConfig(seed=2**64)

    def test_n_floor(self):
        with pytest.raises(DomainError):
            simulate_power_smd(0.5, 1, 0.05, SMOKE)

    def test_nonfinite_d(self):
        with pytest.raises(DomainError):
            simulate_power_smd(math.inf, 10, 0.05, SMOKE)
