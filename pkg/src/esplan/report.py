"""Planner report: everything a proposal needs about one effect-size
assumption, in one deterministic pass.

A report pairs the individual-level effect (on all five scales) with its
population-level impact (PAF over a sweep of exposure prevalences), the
design cost of detecting it (required n, minimum detectable effect), and
a plausibility screen.  Every number is produced by exactly one public
operation of the underlying modules.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

from . import impact, measures, plausibility, power
from .errors import EsplanError
from .measures import MagnitudeLabel, Scale
from .plausibility import (
    ADVISORY_NOTE,
    IntensityClass,
    Mechanism,
    OutcomeProximity,
    PlausibilityVerdict,
    Targeting,
)
from .scenario import Scenario

__all__ = ["Report", "run_report", "render_report", "DEFAULT_PE_SWEEP"]

DEFAULT_PE_SWEEP = (0.01, 0.20, 0.50)

# When the scenario leaves an intervention trait unspecified, assume the
# side most favorable to a large effect, so the verdict reflects only the
# magnitude rules.  The report lists which traits were assumed.
_FAVORABLE_FLAGS = {
    "intensity": IntensityClass.HIGH_TOUCH,
    "targeting": Targeting.TARGETED,
    "proximity": OutcomeProximity.PROXIMAL,
    "mechanism": Mechanism.DIRECT,
}


@dataclass(frozen=True)
class Report:
    scenario: Scenario
    smd: float
    correlation: float
    odds_ratio: float
    relative_risk: float | None
    risk_difference: float | None
    magnitude: MagnitudeLabel
    paf_sweep: tuple[impact.PafResult, ...] | None
    sample_size: power.SampleSizeResult | None
    sample_size_note: str | None
    two_proportion_sample_size: power.SampleSizeResult | None
    mde: power.MdeResult | None
    verdict: PlausibilityVerdict
    assumed_traits: tuple[str, ...]
    attenuated_smd: float | None


@contextmanager
def _stage(name: str):
    try:
        yield
    except EsplanError as exc:
        raise type(exc)(f"[{name}] {exc}") from exc


def run_report(scenario: Scenario) -> Report:
    """Assemble the full report for a validated scenario.  Deterministic;
    any propagated error names the stage that produced it."""
    with _stage("scales"):
        smd = measures.convert(scenario.effect, Scale.SMD)
        correlation = measures.convert(scenario.effect, Scale.CORRELATION)
        odds_ratio = measures.convert(scenario.effect, Scale.ODDS_RATIO)
        relative_risk = risk_difference = None
        if scenario.p0 is not None:
            relative_risk = measures.convert(scenario.effect, Scale.RELATIVE_RISK, scenario.p0)
            risk_difference = measures.convert(scenario.effect, Scale.RISK_DIFFERENCE, scenario.p0)
        magnitude = measures.classify_magnitude(smd)

    with _stage("impact"):
        paf_sweep = None
        if scenario.p0 is not None:
            pes = set(DEFAULT_PE_SWEEP)
            if scenario.pe is not None:
                pes.add(scenario.pe.pe)
            paf_sweep = tuple(
                impact.paf_from_smd(smd, scenario.p0, pe) for pe in sorted(pes)
            )

    with _stage("power"):
        spec = power.PowerSpec(alpha=scenario.alpha, target_power=scenario.target_power)
        sample_size = mde = two_prop = None
        note = None
        if smd.d == 0.0:
            note = "not computable for a null effect"
        else:
            sample_size = power.required_n_smd(smd.d, spec)
            mde = power.mde_smd(sample_size.n_per_group, spec)
            if scenario.p0 is not None and risk_difference is not None:
                two_prop = power.required_n_two_proportions(scenario.p0, risk_difference, spec)

    with _stage("plausibility"):
        assumed = tuple(
            name for name in _FAVORABLE_FLAGS if getattr(scenario, name) is None
        )
        verdict = plausibility.assess_plausibility(
            smd,
            scenario.intensity or _FAVORABLE_FLAGS["intensity"],
            scenario.targeting or _FAVORABLE_FLAGS["targeting"],
            scenario.proximity or _FAVORABLE_FLAGS["proximity"],
            scenario.mechanism or _FAVORABLE_FLAGS["mechanism"],
        )
        attenuated = None
        if (
            scenario.mechanism_effect_per_unit is not None
            and scenario.mechanism_change is not None
        ):
            attenuated = plausibility.attenuate_indirect(
                scenario.mechanism_effect_per_unit, scenario.mechanism_change
            ).d

    return Report(
        scenario=scenario,
        smd=smd.d,
        correlation=correlation.r,
        odds_ratio=odds_ratio.or_,
        relative_risk=relative_risk.rr if relative_risk is not None else None,
        risk_difference=risk_difference.rd if risk_difference is not None else None,
        magnitude=magnitude,
        paf_sweep=paf_sweep,
        sample_size=sample_size,
        sample_size_note=note,
        two_proportion_sample_size=two_prop,
        mde=mde,
        verdict=verdict,
        assumed_traits=assumed,
        attenuated_smd=attenuated,
    )


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def render_report(report: Report) -> str:
    """Aligned-text rendering; byte-stable for identical inputs."""
    s = report.scenario
    lines: list[str] = []
    title = s.label or "scenario"
    lines.append(f"Study planning report: {title}")
    lines.append("=" * len(lines[0]))

    lines.append("")
    lines.append("Inputs")
    lines.append(f"  effect            {s.effect.scale.value} = {_fmt(s.effect.value)}")
    lines.append(f"  baseline risk p0  {_fmt(s.p0.p0) if s.p0 else 'not specified'}")
    lines.append(f"  exposure pe       {_fmt(s.pe.pe) if s.pe else 'not specified'}")
    lines.append(f"  alpha             {_fmt(s.alpha)}")
    lines.append(f"  target power      {_fmt(s.target_power)}")

    lines.append("")
    lines.append("Effect on all scales")
    lines.append(f"  SMD               {_fmt(report.smd)}   [{report.magnitude.value}]")
    lines.append(f"  correlation r     {_fmt(report.correlation)}")
    lines.append(f"  odds ratio        {_fmt(report.odds_ratio)}")
    if report.relative_risk is not None:
        lines.append(f"  relative risk     {_fmt(report.relative_risk)}")
        lines.append(f"  risk difference   {_fmt(report.risk_difference)}")
    else:
        lines.append("  relative risk     requires p0")
        lines.append("  risk difference   requires p0")

    lines.append("")
    lines.append("Population impact (fraction of the adverse outcome avertable)")
    if report.paf_sweep is None:
        lines.append("  requires p0")
    else:
        for cell in report.paf_sweep:
            marker = "  <- scenario pe" if s.pe is not None and cell.pe == s.pe.pe else ""
            lines.append(f"  PAF at pe {cell.pe:<5g}  {cell.paf:.4f}{marker}")

    lines.append("")
    lines.append("Design cost (two-sided z approximation)")
    if report.sample_size is None:
        lines.append(f"  sample size       {report.sample_size_note}")
    else:
        r = report.sample_size
        lines.append(
            f"  n per group       {r.n_per_group}  (total {r.n_total}, "
            f"achieved power {r.achieved_power_at_n:.4f})"
        )
        lines.append(f"  detectable SMD    {report.mde.d_min:.4f} at that n")
        if report.two_proportion_sample_size is not None:
            t = report.two_proportion_sample_size
            lines.append(
                f"  n per group       {t.n_per_group}  if analyzed as two proportions "
                f"at p0 (achieved power {t.achieved_power_at_n:.4f})"
            )

    lines.append("")
    lines.append(f"Plausibility screen: {report.verdict.level}")
    for hit in report.verdict.triggered_rules:
        lines.append(f"  {hit.rule}: {hit.rationale}")
    if report.assumed_traits:
        lines.append(
            "  unspecified traits assumed most favorable: " + ", ".join(report.assumed_traits)
        )
    lines.append(f"  note: {ADVISORY_NOTE}")

    if report.attenuated_smd is not None:
        lines.append("")
        lines.append("Indirect-mechanism attenuation")
        lines.append(
            f"  expected SMD      {_fmt(report.attenuated_smd)} "
            f"({_fmt(s.mechanism_effect_per_unit)} per unit x "
            f"{_fmt(s.mechanism_change)} units induced)"
        )

    return "\n".join(lines) + "\n"
