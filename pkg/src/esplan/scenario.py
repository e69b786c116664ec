"""Scenario definitions: a study-planning what-if in flat key = value text.

Format: one ``key = value`` per line, ``#`` starts a comment, blank lines
ignored.  Unknown and duplicate keys are rejected.  All module
preconditions are enforced at parse time, and every problem found is
reported (not just the first), each message naming the key and source
line.

Recognized keys::

    label                       free text
    effect_scale                smd | r | or | rr | rd        (required)
    effect_value                number                        (required)
    p0                          baseline risk in (0, 1); required when
                                effect_scale is rr or rd
    pe                          exposure prevalence in [0, 1]
    alpha                       two-sided significance level  (default 0.05)
    target_power                target power                  (default 0.80)
    intensity                   high | medium | low
    targeting                   universal | targeted
    proximity                   proximal | distal
    mechanism                   direct | indirect
    mechanism_effect_per_unit   SMD per unit of the intermediary
    mechanism_change            units of intermediary change induced
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Mapping

from .errors import ScenarioError
from .impact import ExposurePrevalence
from .measures import (
    CorrelationValue,
    EffectQuantity,
    OddsRatioValue,
    OutcomeContext,
    RelativeRiskValue,
    RiskDifferenceValue,
    Scale,
    SmdValue,
)
from .plausibility import IntensityClass, Mechanism, OutcomeProximity, Targeting

__all__ = [
    "Scenario",
    "parse_scenario",
    "parse_scenario_entries",
    "scenario_from_entries",
    "SCENARIO_KEYS",
]

SCENARIO_KEYS = (
    "label",
    "effect_scale",
    "effect_value",
    "p0",
    "pe",
    "alpha",
    "target_power",
    "intensity",
    "targeting",
    "proximity",
    "mechanism",
    "mechanism_effect_per_unit",
    "mechanism_change",
)

DEFAULT_ALPHA = 0.05
DEFAULT_TARGET_POWER = 0.80


@dataclass(frozen=True)
class Scenario:
    """A fully validated planning scenario."""

    effect: EffectQuantity
    label: str | None = None
    p0: OutcomeContext | None = None
    pe: ExposurePrevalence | None = None
    alpha: float = DEFAULT_ALPHA
    target_power: float = DEFAULT_TARGET_POWER
    intensity: IntensityClass | None = None
    targeting: Targeting | None = None
    proximity: OutcomeProximity | None = None
    mechanism: Mechanism | None = None
    mechanism_effect_per_unit: float | None = None
    mechanism_change: float | None = None


# Entries map key -> (raw value, origin), origin being "line N" for file
# input or a flag name for command-line overrides.
Entries = Mapping[str, tuple[str, str]]


def parse_scenario(source: str | IO[str]) -> Scenario:
    """Parse and validate scenario text; raises :class:`ScenarioError`
    carrying one message per problem found, syntactic and semantic alike."""
    text = source if isinstance(source, str) else source.read()
    entries, syntax_errors = _parse_lines(text)
    try:
        scenario = scenario_from_entries(entries)
    except ScenarioError as exc:
        raise ScenarioError(syntax_errors + exc.errors) from None
    if syntax_errors:
        raise ScenarioError(syntax_errors)
    return scenario


def parse_scenario_entries(text: str) -> dict[str, tuple[str, str]]:
    """Syntactic pass only: split into ``key -> (value, origin)`` entries,
    rejecting malformed lines, unknown keys, and duplicates."""
    entries, errors = _parse_lines(text)
    if errors:
        raise ScenarioError(errors)
    return entries


def _parse_lines(text: str) -> tuple[dict[str, tuple[str, str]], list[str]]:
    entries: dict[str, tuple[str, str]] = {}
    errors: list[str] = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"expected 'key = value' (line {lineno})")
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        origin = f"line {lineno}"
        if key not in SCENARIO_KEYS:
            errors.append(f"{key}: unknown key ({origin})")
            continue
        if key in entries:
            errors.append(f"{key}: duplicate key, first set at {entries[key][1]} ({origin})")
            continue
        if not value:
            errors.append(f"{key}: empty value ({origin})")
            continue
        entries[key] = (value, origin)
    return entries, errors


def scenario_from_entries(entries: Entries) -> Scenario:
    """Build a scenario from raw string entries, validating everything and
    collecting all errors before raising."""
    errors: list[str] = []

    def fail(key: str, message: str) -> None:
        origin = entries[key][1] if key in entries else None
        errors.append(f"{key}: {message} ({origin})" if origin else f"{key}: {message}")

    def number(key: str) -> float | None:
        if key not in entries:
            return None
        raw = entries[key][0]
        try:
            return float(raw)
        except ValueError:
            fail(key, f"not a number: {raw!r}")
            return None

    def choice(key: str, options: dict[str, object]) -> object | None:
        if key not in entries:
            return None
        raw = entries[key][0].lower()
        if raw not in options:
            fail(key, f"must be one of {', '.join(options)}; got {entries[key][0]!r}")
            return None
        return options[raw]

    label = entries["label"][0] if "label" in entries else None

    scale = choice("effect_scale", {s.value: s for s in Scale})
    if "effect_scale" not in entries:
        errors.append("effect_scale: required key is missing")
    value = number("effect_value")
    if "effect_value" not in entries:
        errors.append("effect_value: required key is missing")

    p0_value = number("p0")
    context: OutcomeContext | None = None
    if p0_value is not None:
        try:
            context = OutcomeContext(p0_value)
        except ValueError as exc:
            fail("p0", str(exc))

    pe_value = number("pe")
    pe: ExposurePrevalence | None = None
    if pe_value is not None:
        try:
            pe = ExposurePrevalence(pe_value)
        except ValueError as exc:
            fail("pe", str(exc))

    alpha = number("alpha")
    if alpha is None:
        alpha = DEFAULT_ALPHA
    elif not 0.0 < alpha < 1.0:
        fail("alpha", f"must lie strictly between 0 and 1, got {alpha}")

    target_power = number("target_power")
    if target_power is None:
        target_power = DEFAULT_TARGET_POWER
    elif not 0.0 < target_power < 1.0:
        fail("target_power", f"must lie strictly between 0 and 1, got {target_power}")

    intensity = choice("intensity", {c.value: c for c in IntensityClass})
    targeting = choice("targeting", {c.value: c for c in Targeting})
    proximity = choice("proximity", {c.value: c for c in OutcomeProximity})
    mechanism = choice("mechanism", {c.value: c for c in Mechanism})

    per_unit = number("mechanism_effect_per_unit")
    change = number("mechanism_change")

    effect: EffectQuantity | None = None
    if scale is not None and value is not None:
        effect = _build_effect(scale, value, context, fail)

    if errors:
        raise ScenarioError(errors)
    assert effect is not None
    return Scenario(
        effect=effect,
        label=label,
        p0=context,
        pe=pe,
        alpha=alpha,
        target_power=target_power,
        intensity=intensity,
        targeting=targeting,
        proximity=proximity,
        mechanism=mechanism,
        mechanism_effect_per_unit=per_unit,
        mechanism_change=change,
    )


def _build_effect(scale, value, context, fail) -> EffectQuantity | None:
    try:
        if scale is Scale.SMD:
            return SmdValue(value)
        if scale is Scale.CORRELATION:
            return CorrelationValue(value)
        if scale is Scale.ODDS_RATIO:
            return OddsRatioValue(value)
        if context is None:
            fail("effect_scale", f"effect scale {scale.value!r} requires p0")
            return None
        if scale is Scale.RELATIVE_RISK:
            return RelativeRiskValue(value, context)
        return RiskDifferenceValue(value, context)
    except ValueError as exc:
        fail("effect_value", str(exc))
        return None
