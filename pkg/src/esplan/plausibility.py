"""Reality checks for proposed effect sizes.

Large-scale social and policy interventions rarely move health outcomes by
the amounts that textbook benchmarks (small 0.2, medium 0.5, large 0.8 SD;
Cohen 1988) would suggest.  This module carries a small catalog of
well-evidenced interventions with the largest SMD each achieved on any
health outcome, and a deterministic rule screen built from those
magnitudes.  The screen is heuristic and advisory: it never blocks a
computation, and its output should be presented as a screening aid, not
an evidence claim.

Rule set (worst triggered level wins; nothing triggered means Plausible):

    R1   |d| >= 0.8                                   -> Implausible
    R2   0.5 <= |d| < 0.8 and the intervention is not
         (high-touch AND targeted) and the outcome is
         not proximal                                  -> Questionable
    R2B  0.5 <= |d| < 0.8 and |d| exceeds the largest
         catalog benchmark (0.541)                     -> Questionable
    R3   indirect mechanism and |d| >= 0.2             -> Questionable
    R4   low-touch, universal, distal and |d| >= 0.2   -> Questionable

:func:`attenuate_indirect` scales a per-unit mechanism effect by the
change in the mechanism the intervention actually induces, which is how
indirect effects end up one to two orders of magnitude below the direct
ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

from .errors import DomainError
from .measures import SmdValue

__all__ = [
    "IntensityClass",
    "Targeting",
    "OutcomeProximity",
    "Mechanism",
    "InterventionBenchmark",
    "VerdictLevel",
    "RuleHit",
    "PlausibilityVerdict",
    "ADVISORY_NOTE",
    "benchmark_catalog",
    "catalog_max_smd",
    "attenuate_indirect",
    "assess_plausibility",
]

ADVISORY_NOTE = (
    "Heuristic screen against published intervention benchmarks; advisory only, "
    "not an evidence claim."
)


class IntensityClass(str, Enum):
    HIGH_TOUCH = "high"
    MEDIUM_TOUCH = "medium"
    LOW_TOUCH = "low"


class Targeting(str, Enum):
    UNIVERSAL = "universal"
    TARGETED = "targeted"


class OutcomeProximity(str, Enum):
    PROXIMAL = "proximal"
    DISTAL = "distal"


class Mechanism(str, Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"


@dataclass(frozen=True)
class InterventionBenchmark:
    """One catalog entry: the largest SMD a well-evidenced intervention
    achieved on any health outcome."""

    name: str
    intensity: IntensityClass
    targeting: Targeting
    largest_smd: float
    outcome: str
    source: str

    def __post_init__(self) -> None:
        if not self.largest_smd > 0.0:
            raise DomainError(f"benchmark SMD must be positive, got {self.largest_smd}")


_CATALOG: tuple[InterventionBenchmark, ...] = (
    InterventionBenchmark(
        name="Home visiting programs in pregnancy and early childhood",
        intensity=IntensityClass.HIGH_TOUCH,
        targeting=Targeting.TARGETED,
        largest_smd=0.369,
        outcome="Child maltreatment episodes",
        source="Bilukha et al., 2005",
    ),
    InterventionBenchmark(
        name="Compulsory schooling laws",
        intensity=IntensityClass.LOW_TOUCH,
        targeting=Targeting.UNIVERSAL,
        largest_smd=0.016,
        outcome="Obesity",
        source="Hamad et al., 2018",
    ),
    InterventionBenchmark(
        name="Smoke-free air policies",
        intensity=IntensityClass.LOW_TOUCH,
        targeting=Targeting.UNIVERSAL,
        largest_smd=0.541,
        outcome="Second-hand smoke exposure",
        source="Community Preventive Services Task Force, 2014",
    ),
    InterventionBenchmark(
        name="Mass media campaigns to reduce tobacco use",
        intensity=IntensityClass.LOW_TOUCH,
        targeting=Targeting.UNIVERSAL,
        largest_smd=0.208,
        outcome="Tobacco use initiation",
        source="unattributed review summary",
    ),
    InterventionBenchmark(
        name="Quitlines to promote tobacco cessation",
        intensity=IntensityClass.MEDIUM_TOUCH,
        targeting=Targeting.TARGETED,
        largest_smd=0.227,
        outcome="Tobacco cessation",
        source="Stead et al., 2013",
    ),
)


def benchmark_catalog() -> list[InterventionBenchmark]:
    """The embedded intervention benchmarks, largest observed SMD each."""
    return list(_CATALOG)


def catalog_max_smd() -> float:
    """Largest SMD across all catalog benchmarks."""
    return max(entry.largest_smd for entry in _CATALOG)


class VerdictLevel(IntEnum):
    PLAUSIBLE = 0
    QUESTIONABLE = 1
    IMPLAUSIBLE = 2

    def __str__(self) -> str:  # noqa: D105
        return self.name.capitalize()


@dataclass(frozen=True)
class RuleHit:
    rule: str
    rationale: str
    level: VerdictLevel


@dataclass(frozen=True)
class PlausibilityVerdict:
    level: VerdictLevel
    triggered_rules: tuple[RuleHit, ...]

    def __post_init__(self) -> None:
        if self.level is not VerdictLevel.PLAUSIBLE and not self.triggered_rules:
            raise DomainError("a non-Plausible verdict must cite at least one rule")


def attenuate_indirect(
    effect_per_unit_of_mechanism: SmdValue | float, induced_change_in_mechanism: float
) -> SmdValue:
    """Expected SMD of an intervention acting through an intermediary:
    (effect per unit of the mechanism) x (units of mechanism change the
    intervention induces).  Exactly multiplicative."""
    per_unit = (
        effect_per_unit_of_mechanism.d
        if isinstance(effect_per_unit_of_mechanism, SmdValue)
        else float(effect_per_unit_of_mechanism)
    )
    change = float(induced_change_in_mechanism)
    if not (math.isfinite(per_unit) and math.isfinite(change)):
        raise DomainError("attenuate_indirect requires finite inputs")
    return SmdValue(per_unit * change)


def assess_plausibility(
    d: SmdValue | float,
    intensity: IntensityClass,
    targeting: Targeting,
    outcome_proximity: OutcomeProximity,
    mechanism: Mechanism,
) -> PlausibilityVerdict:
    """Screen an effect-size assumption against the rule set above.

    The effect enters as a magnitude: the sign is dropped.
    """
    mag = abs(d.d if isinstance(d, SmdValue) else SmdValue(d).d)
    hits: list[RuleHit] = []

    if mag >= 0.8:
        hits.append(
            RuleHit(
                rule="R1",
                rationale="effects of 0.8 SD or more are unlikely or exceptional for "
                "population-scale interventions",
                level=VerdictLevel.IMPLAUSIBLE,
            )
        )
    if 0.5 <= mag < 0.8:
        favorable = (
            intensity is IntensityClass.HIGH_TOUCH and targeting is Targeting.TARGETED
        ) or outcome_proximity is OutcomeProximity.PROXIMAL
        if not favorable:
            hits.append(
                RuleHit(
                    rule="R2",
                    rationale="medium effects require a high-touch targeted program or a "
                    "proximal outcome",
                    level=VerdictLevel.QUESTIONABLE,
                )
            )
        if mag > catalog_max_smd():
            hits.append(
                RuleHit(
                    rule="R2B",
                    rationale=f"exceeds the largest benchmark effect on record "
                    f"({catalog_max_smd():.3f} SD)",
                    level=VerdictLevel.QUESTIONABLE,
                )
            )
    if mechanism is Mechanism.INDIRECT and mag >= 0.2:
        hits.append(
            RuleHit(
                rule="R3",
                rationale="indirect mechanisms produce very small effects once the induced "
                "change in the intermediary is accounted for",
                level=VerdictLevel.QUESTIONABLE,
            )
        )
    if (
        intensity is IntensityClass.LOW_TOUCH
        and targeting is Targeting.UNIVERSAL
        and outcome_proximity is OutcomeProximity.DISTAL
        and mag >= 0.2
    ):
        hits.append(
            RuleHit(
                rule="R4",
                rationale="low-touch universal interventions on distal outcomes sit at the "
                "very-small end of observed effects",
                level=VerdictLevel.QUESTIONABLE,
            )
        )

    level = max((hit.level for hit in hits), default=VerdictLevel.PLAUSIBLE)
    return PlausibilityVerdict(level=level, triggered_rules=tuple(hits))
