"""Conversions among standardized measures of effect.

Five scales are supported: the standardized mean difference (Cohen's d),
the point-biserial-style correlation coefficient, the odds ratio, the
relative risk, and the risk difference.  The pairwise conversions use the
standard meta-analytic formulas:

    r  = d / sqrt(d^2 + 4)            (Borenstein et al., 2009)
    OR = exp(d * pi / sqrt(3))        (Hasselblad & Hedges, 1995)
    RR = OR / (1 - P0 + P0 * OR)      (Zhang & Yu, 1998)
    RD = P0 * RR - P0

together with their algebraic inverses.  RR and RD depend on the baseline
risk P0 of the outcome in the unexposed/untreated group, so values on
those scales carry an :class:`OutcomeContext`.

Sign convention: protective effects are carried as negative d (equivalently
OR/RR below 1).  :func:`invert_for_comparability` is the reporting utility
that flips a ratio below 1 to its reciprocal when only the magnitude is of
interest; it is never applied automatically.

All functions are pure and operate on immutable value objects, so they are
safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Union

from .errors import DomainError, MissingContextError, UsageError

__all__ = [
    "Scale",
    "SmdValue",
    "CorrelationValue",
    "OddsRatioValue",
    "OutcomeContext",
    "RelativeRiskValue",
    "RiskDifferenceValue",
    "EffectQuantity",
    "MagnitudeLabel",
    "compute_smd",
    "compute_pooled_sd",
    "smd_to_r",
    "r_to_smd",
    "smd_to_or",
    "or_to_smd",
    "or_to_rr",
    "rr_to_or",
    "rr_to_rd",
    "rd_to_rr",
    "invert_for_comparability",
    "convert",
    "classify_magnitude",
    "correspondence_grid",
    "CorrespondenceRow",
    "RARE_P0",
    "COMMON_P0",
    "CORRESPONDENCE_SMD_VALUES",
]

# Slope of the SMD -> log-odds map under the logistic-latent assumption.
_LOGISTIC_SCALE = math.pi / math.sqrt(3.0)


class Scale(str, Enum):
    """Tag identifying one of the five supported effect scales."""

    SMD = "smd"
    CORRELATION = "r"
    ODDS_RATIO = "or"
    RELATIVE_RISK = "rr"
    RISK_DIFFERENCE = "rd"


def _require_finite(x: float, what: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{what} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class OutcomeContext:
    """Baseline risk P0 of the outcome among the unexposed/untreated."""

    p0: float

    def __post_init__(self) -> None:
        p0 = _require_finite(self.p0, "p0")
        if not 0.0 < p0 < 1.0:
            raise DomainError(
                f"p0 must lie strictly between 0 and 1, got {p0} "
                "(conversions are undefined for a certain or impossible outcome)"
            )
        object.__setattr__(self, "p0", p0)


@dataclass(frozen=True)
class SmdValue:
    """Standardized mean difference; negative d means the second group's
    mean exceeds the first's."""

    d: float
    scale: ClassVar[Scale] = Scale.SMD

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", _require_finite(self.d, "standardized mean difference"))

    @property
    def value(self) -> float:
        return self.d


@dataclass(frozen=True)
class CorrelationValue:
    """Correlation coefficient, strictly inside (-1, 1)."""

    r: float
    scale: ClassVar[Scale] = Scale.CORRELATION

    def __post_init__(self) -> None:
        r = _require_finite(self.r, "correlation coefficient")
        if not -1.0 < r < 1.0:
            raise DomainError(f"correlation coefficient must lie strictly in (-1, 1), got {r}")
        object.__setattr__(self, "r", r)

    @property
    def value(self) -> float:
        return self.r


@dataclass(frozen=True)
class OddsRatioValue:
    """Odds ratio, strictly positive."""

    or_: float
    scale: ClassVar[Scale] = Scale.ODDS_RATIO

    def __post_init__(self) -> None:
        or_ = _require_finite(self.or_, "odds ratio")
        if or_ <= 0.0:
            raise DomainError(f"odds ratio must be positive, got {or_}")
        object.__setattr__(self, "or_", or_)

    @property
    def value(self) -> float:
        return self.or_


@dataclass(frozen=True)
class RelativeRiskValue:
    """Relative risk with its baseline-risk context.

    The risk in the exposed group is rr * p0, which cannot exceed 1.
    """

    rr: float
    context: OutcomeContext
    scale: ClassVar[Scale] = Scale.RELATIVE_RISK

    def __post_init__(self) -> None:
        rr = _require_finite(self.rr, "relative risk")
        if rr <= 0.0:
            raise DomainError(f"relative risk must be positive, got {rr}")
        if rr * self.context.p0 > 1.0:
            raise DomainError(
                f"relative risk {rr} at baseline risk {self.context.p0} implies an "
                f"exposed-group risk of {rr * self.context.p0:.6g} > 1"
            )
        object.__setattr__(self, "rr", rr)

    @property
    def value(self) -> float:
        return self.rr


@dataclass(frozen=True)
class RiskDifferenceValue:
    """Risk difference with its baseline-risk context.

    Bounded by -p0 (outcome eliminated) and 1 - p0 (outcome certain).
    """

    rd: float
    context: OutcomeContext
    scale: ClassVar[Scale] = Scale.RISK_DIFFERENCE

    def __post_init__(self) -> None:
        rd = _require_finite(self.rd, "risk difference")
        p0 = self.context.p0
        if not -p0 <= rd <= 1.0 - p0:
            raise DomainError(
                f"risk difference {rd} is outside [-p0, 1 - p0] = [{-p0}, {1.0 - p0}] "
                f"for baseline risk {p0}"
            )
        object.__setattr__(self, "rd", rd)

    @property
    def value(self) -> float:
        return self.rd


EffectQuantity = Union[
    SmdValue, CorrelationValue, OddsRatioValue, RelativeRiskValue, RiskDifferenceValue
]


class MagnitudeLabel(Enum):
    """Qualitative magnitude bands for |d|, after Cohen (1988) and
    Sawilowsky (2009).  Intervals are closed on the left."""

    BELOW_VERY_SMALL = "Below very small"
    VERY_SMALL = "Very small"
    SMALL = "Small"
    MEDIUM = "Medium"
    LARGE = "Large"
    VERY_LARGE = "Very large"
    HUGE = "Huge"


_MAGNITUDE_THRESHOLDS: tuple[tuple[float, MagnitudeLabel], ...] = (
    (2.0, MagnitudeLabel.HUGE),
    (1.2, MagnitudeLabel.VERY_LARGE),
    (0.8, MagnitudeLabel.LARGE),
    (0.5, MagnitudeLabel.MEDIUM),
    (0.2, MagnitudeLabel.SMALL),
    (0.01, MagnitudeLabel.VERY_SMALL),
    (0.0, MagnitudeLabel.BELOW_VERY_SMALL),
)


def _as_smd(d: SmdValue | float) -> SmdValue:
    return d if isinstance(d, SmdValue) else SmdValue(d)


def _as_correlation(r: CorrelationValue | float) -> CorrelationValue:
    return r if isinstance(r, CorrelationValue) else CorrelationValue(r)


def _as_odds_ratio(or_: OddsRatioValue | float) -> OddsRatioValue:
    return or_ if isinstance(or_, OddsRatioValue) else OddsRatioValue(or_)


def _as_context(context: OutcomeContext | float) -> OutcomeContext:
    return context if isinstance(context, OutcomeContext) else OutcomeContext(context)


def compute_smd(mean1: float, mean2: float, pooled_sd: float) -> SmdValue:
    """Standardized mean difference (mean1 - mean2) / pooled_sd."""
    mean1 = _require_finite(mean1, "mean1")
    mean2 = _require_finite(mean2, "mean2")
    pooled_sd = _require_finite(pooled_sd, "pooled_sd")
    if pooled_sd <= 0.0:
        raise DomainError(f"pooled_sd must be positive, got {pooled_sd}")
    return SmdValue((mean1 - mean2) / pooled_sd)


def compute_pooled_sd(n1: int, sd1: float, n2: int, sd2: float) -> float:
    """Two-group pooled standard deviation with (n - 1) weights:

        sqrt(((n1 - 1) sd1^2 + (n2 - 1) sd2^2) / (n1 + n2 - 2))
    """
    if n1 < 2 or n2 < 2:
        raise DomainError(f"each group needs at least 2 observations, got {n1} and {n2}")
    sd1 = _require_finite(sd1, "sd1")
    sd2 = _require_finite(sd2, "sd2")
    if sd1 < 0.0 or sd2 < 0.0:
        raise DomainError("standard deviations cannot be negative")
    if sd1 + sd2 == 0.0:
        raise DomainError("at least one group must have positive standard deviation")
    return math.sqrt(((n1 - 1) * sd1 * sd1 + (n2 - 1) * sd2 * sd2) / (n1 + n2 - 2))


def smd_to_r(d: SmdValue | float) -> CorrelationValue:
    """r = d / sqrt(d^2 + 4), assuming the two groups arise by
    dichotomizing one variable of a bivariate normal pair."""
    dv = _as_smd(d).d
    return CorrelationValue(dv / math.sqrt(dv * dv + 4.0))


def r_to_smd(r: CorrelationValue | float) -> SmdValue:
    """Inverse of :func:`smd_to_r`: d = 2 r / sqrt(1 - r^2)."""
    rv = _as_correlation(r).r
    return SmdValue(2.0 * rv / math.sqrt(1.0 - rv * rv))


def smd_to_or(d: SmdValue | float) -> OddsRatioValue:
    """OR = exp(d * pi / sqrt(3)), assuming a logistic latent outcome in
    each group."""
    dv = _as_smd(d).d
    return OddsRatioValue(math.exp(dv * _LOGISTIC_SCALE))


def or_to_smd(or_: OddsRatioValue | float) -> SmdValue:
    """Inverse of :func:`smd_to_or`: d = sqrt(3) ln(OR) / pi."""
    ov = _as_odds_ratio(or_).or_
    return SmdValue(math.log(ov) / _LOGISTIC_SCALE)


def or_to_rr(or_: OddsRatioValue | float, context: OutcomeContext | float) -> RelativeRiskValue:
    """RR = OR / (1 - P0 + P0 * OR) at baseline risk P0."""
    ov = _as_odds_ratio(or_).or_
    ctx = _as_context(context)
    return RelativeRiskValue(ov / (1.0 - ctx.p0 + ctx.p0 * ov), ctx)


def rr_to_or(rr: RelativeRiskValue) -> OddsRatioValue:
    """Inverse of :func:`or_to_rr`: OR = RR (1 - P0) / (1 - P0 * RR)."""
    p0 = rr.context.p0
    if rr.rr * p0 >= 1.0:
        raise DomainError(
            f"rr_to_or: relative risk {rr.rr} at baseline risk {p0} puts the exposed-group "
            "risk at or above 1, where the odds ratio is undefined"
        )
    return OddsRatioValue(rr.rr * (1.0 - p0) / (1.0 - p0 * rr.rr))


def rr_to_rd(rr: RelativeRiskValue) -> RiskDifferenceValue:
    """RD = P0 * RR - P0, carrying the same baseline-risk context."""
    p0 = rr.context.p0
    return RiskDifferenceValue(p0 * rr.rr - p0, rr.context)


def rd_to_rr(rd: RiskDifferenceValue) -> RelativeRiskValue:
    """Inverse of :func:`rr_to_rd`: RR = (P0 + RD) / P0."""
    p0 = rd.context.p0
    return RelativeRiskValue((p0 + rd.rd) / p0, rd.context)


def invert_for_comparability(q: EffectQuantity) -> EffectQuantity:
    """Flip an OR or RR below 1 to its reciprocal so magnitudes compare.

    Values at or above 1 are returned unchanged.  Inverting a relative
    risk relabels which group is the baseline, so the carried context
    becomes the old exposed-group risk rr * p0.  The signed scales
    (SMD, correlation, risk difference) flip by negation instead and are
    rejected here.
    """
    if isinstance(q, OddsRatioValue):
        if q.or_ >= 1.0:
            return q
        return OddsRatioValue(1.0 / q.or_)
    if isinstance(q, RelativeRiskValue):
        if q.rr >= 1.0:
            return q
        return RelativeRiskValue(1.0 / q.rr, OutcomeContext(q.rr * q.context.p0))
    raise UsageError(
        "invert_for_comparability applies to odds ratios and relative risks only; "
        f"got {type(q).__name__} (signed scales flip by negation)"
    )


# Position of each scale along the conversion chain r <-> SMD <-> OR <-> RR <-> RD.
_CHAIN: tuple[Scale, ...] = (
    Scale.CORRELATION,
    Scale.SMD,
    Scale.ODDS_RATIO,
    Scale.RELATIVE_RISK,
    Scale.RISK_DIFFERENCE,
)


def convert(
    q: EffectQuantity,
    target_scale: Scale | str,
    context: OutcomeContext | float | None = None,
) -> EffectQuantity:
    """Convert an effect quantity to another scale along the canonical
    pivot chain r <-> SMD <-> OR <-> RR <-> RD.

    A baseline risk is required whenever the chain passes through the
    RR/RD end.  Values on those scales carry their own context; a
    ``context`` supplied alongside such a value must agree with it
    (re-anchoring an effect to a different baseline is a two-step
    operation: convert to a context-free scale first).
    """
    target = Scale(target_scale)
    ctx: OutcomeContext | None = None
    if context is not None:
        ctx = _as_context(context)
        if isinstance(q, (RelativeRiskValue, RiskDifferenceValue)) and q.context != ctx:
            raise UsageError(
                f"the value carries baseline risk {q.context.p0} but {ctx.p0} was "
                "supplied; convert to a context-free scale first to re-anchor"
            )
    elif isinstance(q, (RelativeRiskValue, RiskDifferenceValue)):
        ctx = q.context

    if target in (Scale.RELATIVE_RISK, Scale.RISK_DIFFERENCE) and ctx is None:
        raise MissingContextError(
            f"converting to {target.value} requires a baseline risk p0"
        )

    src = _CHAIN.index(q.scale)
    dst = _CHAIN.index(target)
    current: EffectQuantity = q
    while src < dst:
        current = _STEP_UP[src](current, ctx)
        src += 1
    while src > dst:
        current = _STEP_DOWN[src](current)
        src -= 1
    return current


def _up_r(q: CorrelationValue, ctx: OutcomeContext | None) -> SmdValue:
    return r_to_smd(q)


def _up_smd(q: SmdValue, ctx: OutcomeContext | None) -> OddsRatioValue:
    return smd_to_or(q)


def _up_or(q: OddsRatioValue, ctx: OutcomeContext | None) -> RelativeRiskValue:
    if ctx is None:
        raise MissingContextError("or_to_rr requires a baseline risk p0")
    return or_to_rr(q, ctx)


def _up_rr(q: RelativeRiskValue, ctx: OutcomeContext | None) -> RiskDifferenceValue:
    return rr_to_rd(q)


# Index i converts the scale at chain position i to position i+1 / i-1.
_STEP_UP = {0: _up_r, 1: _up_smd, 2: _up_or, 3: _up_rr}
_STEP_DOWN = {1: smd_to_r, 2: or_to_smd, 3: rr_to_or, 4: rd_to_rr}


def classify_magnitude(d: SmdValue | float) -> MagnitudeLabel:
    """Qualitative magnitude band of |d|; intervals closed on the left."""
    mag = abs(_as_smd(d).d)
    for threshold, label in _MAGNITUDE_THRESHOLDS:
        if mag >= threshold:
            return label
    return MagnitudeLabel.BELOW_VERY_SMALL


RARE_P0 = 0.01
COMMON_P0 = 0.20

CORRESPONDENCE_SMD_VALUES: tuple[float, ...] = (
    0.01, 0.02, 0.05, 0.10, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
    0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.75, 2.0, 2.25, 2.5,
)


@dataclass(frozen=True)
class CorrespondenceRow:
    """One SMD and its equivalents on the other scales, evaluated at a
    rare (P0 = 0.01) and a common (P0 = 0.20) outcome."""

    d: float
    r: float
    odds_ratio: float
    rr_rare: float
    rr_common: float
    rd_rare: float
    rd_common: float
    label: MagnitudeLabel


def correspondence_grid() -> list[CorrespondenceRow]:
    """Reference grid mapping a standard set of SMDs to all other scales.

    Cells are kept at full double precision; rendering to the customary
    display precisions (two decimals, three for risk differences) is the
    table emitter's job.
    """
    rows = []
    for d in CORRESPONDENCE_SMD_VALUES:
        r = smd_to_r(d).r
        or_ = smd_to_or(d)
        rr_rare = or_to_rr(or_, RARE_P0)
        rr_common = or_to_rr(or_, COMMON_P0)
        rows.append(
            CorrespondenceRow(
                d=d,
                r=r,
                odds_ratio=or_.or_,
                rr_rare=rr_rare.rr,
                rr_common=rr_common.rr,
                rd_rare=rr_to_rd(rr_rare).rd,
                rd_common=rr_to_rd(rr_common).rd,
                label=classify_magnitude(d),
            )
        )
    return rows
