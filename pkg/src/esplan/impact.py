"""Population attributable fractions: individual effect size to
population-level impact.

The PAF is the proportion of an adverse outcome that would be averted if
the exposure/intervention covered the whole population (Rothman et al.):

    PAF = Pe (RR - 1) / (1 + Pe (RR - 1))

with Pe the proportion exposed or treated.  The magnitude convention here
mirrors study-planning practice: effects enter as magnitudes (RR >= 1,
|d| for SMDs), and the PAF reads as the fraction of the adverse outcome
avertable by universalizing the intervention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, UsageError
from .measures import OutcomeContext, RelativeRiskValue, SmdValue, or_to_rr, smd_to_or

__all__ = [
    "ExposurePrevalence",
    "PafResult",
    "PafGrid",
    "paf_from_rr",
    "paf_from_smd",
    "paf_grid",
    "DEFAULT_GRID_SMDS",
    "DEFAULT_GRID_P0S",
    "DEFAULT_GRID_PES",
]

DEFAULT_GRID_SMDS: tuple[float, ...] = (0.01, 0.2, 0.5, 0.8, 1.2, 2.0)
DEFAULT_GRID_P0S: tuple[float, ...] = (0.01, 0.20)
DEFAULT_GRID_PES: tuple[float, ...] = (0.01, 0.20, 0.50)


@dataclass(frozen=True)
class ExposurePrevalence:
    """Proportion of the population exposed/treated, in [0, 1]."""

    pe: float

    def __post_init__(self) -> None:
        pe = float(self.pe)
        if not math.isfinite(pe) or not 0.0 <= pe <= 1.0:
            raise DomainError(f"exposure prevalence must lie in [0, 1], got {self.pe!r}")
        object.__setattr__(self, "pe", pe)


@dataclass(frozen=True)
class PafResult:
    """A population attributable fraction with the inputs that produced it.

    ``smd`` is populated when the effect entered on the SMD scale; ``p0``
    when a baseline risk took part in the chain.
    """

    paf: float
    rr: float
    pe: float
    p0: float | None = None
    smd: float | None = None


@dataclass(frozen=True)
class PafGrid:
    """PAFs tabulated with rows indexed by (SMD, P0) and columns by Pe."""

    row_keys: tuple[tuple[float, float], ...]
    pes: tuple[float, ...]
    rows: tuple[tuple[PafResult, ...], ...]

    def __post_init__(self) -> None:
        for key, row in zip(self.row_keys, self.rows):
            pafs = [cell.paf for cell in row]
            if any(b < a for a, b in zip(pafs, pafs[1:])):
                raise DomainError(f"PAF row {key} is not nondecreasing in Pe: {pafs}")

    def cell(self, d: float, p0: float, pe: float) -> PafResult:
        i = self.row_keys.index((d, p0))
        j = self.pes.index(pe)
        return self.rows[i][j]


def _as_pe(pe: ExposurePrevalence | float) -> ExposurePrevalence:
    return pe if isinstance(pe, ExposurePrevalence) else ExposurePrevalence(pe)


def paf_from_rr(
    rr: RelativeRiskValue | float, pe: ExposurePrevalence | float
) -> PafResult:
    """PAF from a relative risk and an exposure prevalence.

    Requires RR >= 1: a protective effect must first be expressed as the
    magnitude of the corresponding adverse-outcome increase (see
    :func:`esplan.measures.invert_for_comparability`).
    """
    if isinstance(rr, RelativeRiskValue):
        rr_value: float = rr.rr
        p0 = rr.context.p0
    else:
        rr_value = float(rr)
        p0 = None
        if not math.isfinite(rr_value):
            raise DomainError(f"relative risk must be finite, got {rr!r}")
    if rr_value < 1.0:
        raise UsageError(
            f"paf_from_rr expects a relative risk of at least 1, got {rr_value}; "
            "apply invert_for_comparability first to express the effect as a magnitude"
        )
    pe_value = _as_pe(pe).pe
    excess = pe_value * (rr_value - 1.0)
    return PafResult(paf=excess / (1.0 + excess), rr=rr_value, pe=pe_value, p0=p0)


def paf_from_smd(
    d: SmdValue | float,
    context: OutcomeContext | float,
    pe: ExposurePrevalence | float,
) -> PafResult:
    """PAF from an effect on the SMD scale, via |d| -> OR -> RR -> PAF.

    The magnitude |d| is used: the question answered is how much of the
    adverse outcome the intervention could avert, whichever direction the
    sign convention gave the effect.
    """
    d = d if isinstance(d, SmdValue) else SmdValue(d)
    ctx = context if isinstance(context, OutcomeContext) else OutcomeContext(context)
    rr = or_to_rr(smd_to_or(abs(d.d)), ctx)
    result = paf_from_rr(rr, pe)
    return PafResult(paf=result.paf, rr=result.rr, pe=result.pe, p0=ctx.p0, smd=abs(d.d))


def paf_grid(
    ds: list[float] | tuple[float, ...] = DEFAULT_GRID_SMDS,
    p0s: list[float] | tuple[float, ...] = DEFAULT_GRID_P0S,
    pes: list[float] | tuple[float, ...] = DEFAULT_GRID_PES,
) -> PafGrid:
    """Tabulate PAFs over a grid of effect sizes, baseline risks, and
    exposure prevalences.  Rows iterate SMD-major, then baseline risk."""
    if not ds or not p0s or not pes:
        raise UsageError("paf_grid requires at least one value on each axis")
    pes_t = tuple(float(pe) for pe in pes)
    row_keys = []
    rows = []
    for d in ds:
        for p0 in p0s:
            row_keys.append((float(d), float(p0)))
            rows.append(tuple(paf_from_smd(d, p0, pe) for pe in pes_t))
    return PafGrid(row_keys=tuple(row_keys), pes=pes_t, rows=tuple(rows))
