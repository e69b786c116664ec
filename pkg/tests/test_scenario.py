"""Scenario parsing and validation."""

import io

import pytest

from esplan.errors import ScenarioError
from esplan.measures import Scale
from esplan.scenario import parse_scenario


def errors_of(text: str) -> list[str]:
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(text)
    return excinfo.value.errors


class TestParsing:
    def test_minimal_smd_scenario(self):
        scn = parse_scenario(
            "effect_scale = smd\neffect_value = 0.5\np0 = 0.01\npe = 0.5"
        )
        assert scn.effect.scale is Scale.SMD
        assert scn.effect.d == 0.5
        assert scn.p0.p0 == 0.01
        assert scn.pe.pe == 0.5
        assert scn.alpha == 0.05
        assert scn.target_power == 0.80
        assert scn.label is None

    def test_comments_blanks_and_label(self):
        scn = parse_scenario(
            "# a planning what-if\n"
            "label = pilot rollout\n"
            "\n"
            "effect_scale = or   # odds ratio from the prior trial\n"
            "effect_value = 1.4\n"
        )
        assert scn.label == "pilot rollout"
        assert scn.effect.scale is Scale.ODDS_RATIO
        assert scn.effect.or_ == 1.4

    def test_file_like_input(self):
        scn = parse_scenario(io.StringIO("effect_scale = smd\neffect_value = -0.2\n"))
        assert scn.effect.d == -0.2

    def test_rr_carries_context(self):
        scn = parse_scenario("effect_scale = rr\neffect_value = 1.5\np0 = 0.3\n")
        assert scn.effect.rr == 1.5
        assert scn.effect.context.p0 == 0.3

    def test_all_keys(self):
        scn = parse_scenario(
            "label = everything\n"
            "effect_scale = rd\n"
            "effect_value = 0.05\n"
            "p0 = 0.2\n"
            "pe = 0.4\n"
            "alpha = 0.01\n"
            "target_power = 0.9\n"
            "intensity = medium\n"
            "targeting = targeted\n"
            "proximity = proximal\n"
            "mechanism = indirect\n"
            "mechanism_effect_per_unit = 0.03\n"
            "mechanism_change = 0.1\n"
        )
        assert scn.alpha == 0.01
        assert scn.target_power == 0.9
        assert scn.mechanism_effect_per_unit == 0.03
        assert scn.mechanism_change == 0.1


class TestValidation:
    def test_negative_odds_ratio(self):
        errors = errors_of("effect_scale = or\neffect_value = -2")
        assert len(errors) == 1
        assert "effect_value" in errors[0]
        assert "odds ratio must be positive" in errors[0]
        assert "line 2" in errors[0]

    def test_rr_exceeding_certainty(self):
        errors = errors_of("effect_scale = rr\neffect_value = 6\np0 = 0.2")
        assert any("exposed-group risk" in e for e in errors)

    def test_rr_requires_p0(self):
        errors = errors_of("effect_scale = rr\neffect_value = 1.5")
        assert any("requires p0" in e for e in errors)

    def test_unknown_key(self):
        errors = errors_of("effect_scale = smd\neffect_value = 1\nbogus = 3")
        assert any("bogus: unknown key (line 3)" in e for e in errors)

    def test_duplicate_key(self):
        errors = errors_of("effect_scale = smd\neffect_value = 1\neffect_value = 2")
        assert any("duplicate" in e and "line 3" in e for e in errors)

    def test_missing_equals(self):
        errors = errors_of("effect_scale smd\neffect_value = 1")
        assert any("expected 'key = value' (line 1)" in e for e in errors)

    def test_missing_required_keys(self):
        errors = errors_of("pe = 0.5")
        assert any(e.startswith("effect_scale: required") for e in errors)
        assert any(e.startswith("effect_value: required") for e in errors)

    def test_bad_number(self):
        errors = errors_of("effect_scale = smd\neffect_value = lots")
        assert any("not a number" in e for e in errors)

    def test_bad_choice(self):
        errors = errors_of("effect_scale = smd\neffect_value = 1\nintensity = gentle")
        assert any("intensity" in e and "must be one of" in e for e in errors)

    def test_alpha_out_of_range(self):
        errors = errors_of("effect_scale = smd\neffect_value = 1\nalpha = 1.5")
        assert any("alpha" in e for e in errors)

    def test_pe_out_of_range(self):
        errors = errors_of("effect_scale = smd\neffect_value = 1\npe = -0.2")
        assert any("pe" in e for e in errors)

    def test_all_problems_reported_together(self):
        errors = errors_of(
            "nonsense\n"
            "effect_scale = banana\n"
            "p0 = 7\n"
            "alpha = nope\n"
        )
        assert len(errors) >= 4

    def test_empty_value(self):
        errors = errors_of("effect_scale =\neffect_value = 1")
        assert any("empty value" in e for e in errors)
