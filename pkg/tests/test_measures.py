"""Frozen-value and error-contract tests for the scale conversions."""

import math

import pytest

from esplan.errors import DomainError, MissingContextError, UsageError
from esplan.measures import (
    CORRESPONDENCE_SMD_VALUES,
    CorrelationValue,
    MagnitudeLabel,
    OddsRatioValue,
    OutcomeContext,
    RelativeRiskValue,
    RiskDifferenceValue,
    Scale,
    SmdValue,
    classify_magnitude,
    compute_pooled_sd,
    compute_smd,
    convert,
    correspondence_grid,
    invert_for_comparability,
    or_to_rr,
    or_to_smd,
    r_to_smd,
    rd_to_rr,
    rr_to_or,
    rr_to_rd,
    smd_to_or,
    smd_to_r,
)


class TestComputeSmd:
    def test_direct_arithmetic(self):
        assert compute_smd(1.0, 0.0, 2.0).d == 0.5

    def test_equal_means(self):
        assert compute_smd(3.0, 3.0, 1.7).d == 0.0

    def test_hand_checked_value(self):
        assert compute_smd(12.4, 10.1, 4.6).d == pytest.approx(0.5)

    @pytest.mark.parametrize("sd", [0.0, -1.0, math.nan, math.inf])
    def test_bad_pooled_sd(self, sd):
        with pytest.raises(DomainError):
            compute_smd(1.0, 0.0, sd)

    def test_nonfinite_mean(self):
        with pytest.raises(DomainError):
            compute_smd(math.nan, 0.0, 1.0)


class TestComputePooledSd:
    def test_equal_sds_pool_to_themselves(self):
        assert compute_pooled_sd(10, 2.0, 10, 2.0) == pytest.approx(2.0)

    def test_one_degenerate_group(self):
        assert compute_pooled_sd(2, 0.0, 2, 2.0) == pytest.approx(math.sqrt(2.0))

    def test_unbalanced_groups(self):
        assert compute_pooled_sd(5, 1.0, 15, 3.0) == pytest.approx(math.sqrt(130.0 / 18.0))

    def test_residual_pooling_oracle(self):
        # Independent oracle: pool by the combined residual sum of squares.
        import numpy as np

        rng = np.random.default_rng(7)
        for _ in range(20):
            x1 = rng.normal(3.0, 2.0, size=int(rng.integers(2, 40)))
            x2 = rng.normal(-1.0, 0.5, size=int(rng.integers(2, 40)))
            residuals = np.concatenate([x1 - x1.mean(), x2 - x2.mean()])
            expected = math.sqrt((residuals**2).sum() / (len(x1) + len(x2) - 2))
            got = compute_pooled_sd(len(x1), x1.std(ddof=1), len(x2), x2.std(ddof=1))
            assert got == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("n1,n2", [(1, 10), (10, 1), (0, 0)])
    def test_small_groups_rejected(self, n1, n2):
        with pytest.raises(DomainError):
            compute_pooled_sd(n1, 1.0, n2, 1.0)

    def test_both_sds_zero_rejected(self):
        with pytest.raises(DomainError):
            compute_pooled_sd(5, 0.0, 5, 0.0)


class TestSmdCorrelation:
    def test_half(self):
        r = smd_to_r(0.5).r
        assert r == pytest.approx(0.24253562503633297, abs=1e-15)
        assert round(r, 2) == 0.24

    def test_null(self):
        assert smd_to_r(0.0).r == 0.0
        assert r_to_smd(0.0).d == 0.0

    def test_unit(self):
        r = smd_to_r(1.0).r
        assert r == pytest.approx(1.0 / math.sqrt(5.0), abs=1e-15)
        assert round(r, 2) == 0.45

    def test_inverse_of_known_pairs(self):
        assert r_to_smd(smd_to_r(0.5)).d == pytest.approx(0.5, abs=1e-14)
        assert r_to_smd(smd_to_r(1.0)).d == pytest.approx(1.0, abs=1e-14)

    def test_r_domain(self):
        with pytest.raises(DomainError):
            CorrelationValue(1.0)
        with pytest.raises(DomainError):
            r_to_smd(-1.5)


class TestSmdOddsRatio:
    def test_small_effect(self):
        assert round(smd_to_or(0.2).or_, 2) == 1.44

    def test_null(self):
        assert smd_to_or(0.0).or_ == 1.0
        assert or_to_smd(1.0).d == 0.0

    def test_huge_effect(self):
        assert round(smd_to_or(2.5).or_, 2) == 93.18

    def test_protective_or(self):
        d = or_to_smd(0.70).d
        assert d == pytest.approx(math.sqrt(3.0) * math.log(0.70) / math.pi, abs=1e-15)
        assert round(d, 4) == -0.1966

    def test_round_trip_of_medium_row(self):
        assert or_to_smd(smd_to_or(0.5)).d == pytest.approx(0.5, abs=1e-14)

    def test_or_domain(self):
        with pytest.raises(DomainError):
            or_to_smd(0.0)
        with pytest.raises(DomainError):
            OddsRatioValue(-2.0)


class TestOrRr:
    def test_medium_row_common_outcome(self):
        rr = or_to_rr(smd_to_or(0.5), 0.20)
        assert round(rr.rr, 2) == 1.91

    def test_null(self):
        assert or_to_rr(1.0, 0.37).rr == 1.0

    def test_contingency_construction(self):
        # odds(p1)/odds(0.5) = 4 gives p1 = 0.8, hence RR = 0.8/0.5.
        rr = or_to_rr(4.0, 0.50)
        assert rr.rr == pytest.approx(1.6, abs=1e-15)

    def test_bad_p0(self):
        with pytest.raises(DomainError):
            or_to_rr(2.0, 0.0)
        with pytest.raises(DomainError):
            or_to_rr(2.0, 1.0)

    def test_inverse(self):
        ctx = OutcomeContext(0.50)
        assert rr_to_or(RelativeRiskValue(1.6, ctx)).or_ == pytest.approx(4.0, abs=1e-14)
        assert rr_to_or(RelativeRiskValue(1.0, OutcomeContext(0.2))).or_ == 1.0
        rr = or_to_rr(smd_to_or(0.5), 0.20)
        assert rr_to_or(rr).or_ == pytest.approx(smd_to_or(0.5).or_, rel=1e-14)

    def test_inverse_rejects_certain_outcome(self):
        rr = RelativeRiskValue(5.0, OutcomeContext(0.2))  # exposed risk exactly 1
        with pytest.raises(DomainError, match="rr_to_or"):
            rr_to_or(rr)


class TestRrRd:
    def test_medium_row(self):
        rr = or_to_rr(smd_to_or(0.5), 0.20)
        assert round(rr_to_rd(rr).rd, 3) == 0.182

    def test_null(self):
        rr = RelativeRiskValue(1.0, OutcomeContext(0.33))
        assert rr_to_rd(rr).rd == 0.0

    def test_unit_smd_row(self):
        rr = or_to_rr(smd_to_or(1.0), 0.20)
        assert round(rr_to_rd(rr).rd, 3) == 0.405

    def test_rd_to_rr(self):
        ctx = OutcomeContext(0.20)
        assert rd_to_rr(RiskDifferenceValue(0.0, ctx)).rr == 1.0
        assert rd_to_rr(RiskDifferenceValue(-0.05, OutcomeContext(0.10))).rr == pytest.approx(0.5)
        rd = rr_to_rd(or_to_rr(smd_to_or(0.5), 0.20))
        assert rd_to_rr(rd).rr == pytest.approx(or_to_rr(smd_to_or(0.5), 0.20).rr, rel=1e-14)

    def test_rd_range_enforced(self):
        ctx = OutcomeContext(0.20)
        with pytest.raises(DomainError):
            RiskDifferenceValue(0.81, ctx)
        with pytest.raises(DomainError):
            RiskDifferenceValue(-0.21, ctx)


class TestInvertForComparability:
    def test_protective_or(self):
        out = invert_for_comparability(OddsRatioValue(0.70))
        assert out.or_ == pytest.approx(1.0 / 0.70, abs=1e-15)

    def test_fixed_point(self):
        assert invert_for_comparability(OddsRatioValue(1.0)).or_ == 1.0
        assert invert_for_comparability(OddsRatioValue(2.5)).or_ == 2.5

    def test_protective_rr_swaps_baseline(self):
        rr = RelativeRiskValue(0.25, OutcomeContext(0.8))
        out = invert_for_comparability(rr)
        assert out.rr == pytest.approx(4.0, abs=1e-14)
        assert out.context.p0 == pytest.approx(0.2, abs=1e-15)

    def test_idempotent(self):
        once = invert_for_comparability(OddsRatioValue(0.70))
        assert invert_for_comparability(once).or_ == once.or_
        rr_once = invert_for_comparability(RelativeRiskValue(0.25, OutcomeContext(0.8)))
        assert invert_for_comparability(rr_once).rr == rr_once.rr

    def test_signed_scales_rejected(self):
        with pytest.raises(UsageError):
            invert_for_comparability(SmdValue(-0.5))
        with pytest.raises(UsageError):
            invert_for_comparability(CorrelationValue(-0.2))


class TestConvert:
    def test_smd_to_rd_rare_outcome(self):
        rd = convert(SmdValue(0.5), Scale.RISK_DIFFERENCE, 0.01)
        assert round(rd.rd, 3) == 0.014

    def test_null_maps_to_null_everywhere(self):
        null = SmdValue(0.0)
        assert convert(null, Scale.CORRELATION).r == 0.0
        assert convert(null, Scale.ODDS_RATIO).or_ == 1.0
        assert convert(null, Scale.RELATIVE_RISK, 0.2).rr == 1.0
        assert convert(null, Scale.RISK_DIFFERENCE, 0.2).rd == 0.0

    def test_reverse_chain_from_rd(self):
        # Forward at full precision, then all the way back.
        rd = convert(SmdValue(0.2), Scale.RISK_DIFFERENCE, 0.20)
        back = convert(rd, Scale.SMD)
        assert back.d == pytest.approx(0.2, abs=1e-12)
        # The display-precision variant of the same reverse chain.
        rounded = RiskDifferenceValue(0.064, OutcomeContext(0.20))
        assert round(convert(rounded, Scale.SMD).d, 2) == 0.2

    def test_string_scale_tags_accepted(self):
        assert convert(SmdValue(0.5), "or").or_ == pytest.approx(smd_to_or(0.5).or_)

    def test_missing_context(self):
        with pytest.raises(MissingContextError):
            convert(SmdValue(0.5), Scale.RISK_DIFFERENCE)
        with pytest.raises(MissingContextError):
            convert(CorrelationValue(0.3), Scale.RELATIVE_RISK)

    def test_chain_error_names_failing_link(self):
        rr = RelativeRiskValue(5.0, OutcomeContext(0.2))
        with pytest.raises(DomainError, match="rr_to_or"):
            convert(rr, Scale.SMD)

    def test_supplied_context_wins_when_moving_down_chain(self):
        or_ = OddsRatioValue(2.0)
        rr = convert(or_, Scale.RELATIVE_RISK, OutcomeContext(0.1))
        assert rr.context.p0 == 0.1

    def test_conflicting_context_rejected(self):
        rr = RelativeRiskValue(1.5, OutcomeContext(0.2))
        with pytest.raises(UsageError, match="re-anchor"):
            convert(rr, Scale.RISK_DIFFERENCE, OutcomeContext(0.3))
        # Supplying the matching context is fine.
        assert convert(rr, Scale.RISK_DIFFERENCE, OutcomeContext(0.2)).rd == pytest.approx(0.1)


class TestClassifyMagnitude:
    @pytest.mark.parametrize(
        "d,label",
        [
            (0.005, MagnitudeLabel.BELOW_VERY_SMALL),
            (0.01, MagnitudeLabel.VERY_SMALL),
            (0.15, MagnitudeLabel.VERY_SMALL),
            (0.2, MagnitudeLabel.SMALL),
            (0.5, MagnitudeLabel.MEDIUM),
            (0.79, MagnitudeLabel.MEDIUM),
            (0.8, MagnitudeLabel.LARGE),
            (1.2, MagnitudeLabel.VERY_LARGE),
            (2.0, MagnitudeLabel.HUGE),
            (11.0, MagnitudeLabel.HUGE),
            (-0.5, MagnitudeLabel.MEDIUM),
        ],
    )
    def test_bands(self, d, label):
        assert classify_magnitude(d) is label


class TestCorrespondenceGrid:
    def test_row_count_and_smds(self):
        grid = correspondence_grid()
        assert len(grid) == 23
        assert tuple(row.d for row in grid) == CORRESPONDENCE_SMD_VALUES

    def test_spot_row(self):
        row = next(r for r in correspondence_grid() if r.d == 0.15)
        assert round(row.r, 2) == 0.07
        assert round(row.odds_ratio, 2) == 1.31
        assert round(row.rr_rare, 2) == 1.31
        assert round(row.rr_common, 2) == 1.24
        assert round(row.rd_rare, 3) == 0.003
        assert round(row.rd_common, 3) == 0.047
        assert row.label is MagnitudeLabel.VERY_SMALL
