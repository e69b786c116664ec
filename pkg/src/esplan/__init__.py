"""esplan: effect-size conversion, population impact, and power planning
for intervention studies.

The package turns one effect-size assumption into everything a study
proposal needs: the effect on all five common scales, the population
attributable fraction it implies, the sample size required to detect it,
and a plausibility screen against published intervention benchmarks.
"""

from importlib import import_module
from typing import TYPE_CHECKING

from .errors import (
    DomainError,
    EsplanError,
    MissingContextError,
    ScenarioError,
    UsageError,
)
from .impact import ExposurePrevalence, PafGrid, PafResult, paf_from_rr, paf_from_smd, paf_grid
from .measures import (
    CorrelationValue,
    CorrespondenceRow,
    EffectQuantity,
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
from .plausibility import (
    InterventionBenchmark,
    IntensityClass,
    Mechanism,
    OutcomeProximity,
    PlausibilityVerdict,
    RuleHit,
    Targeting,
    VerdictLevel,
    assess_plausibility,
    attenuate_indirect,
    benchmark_catalog,
)
from .scenario import Scenario, parse_scenario
from .tables import TableFormat, TableKind, emit_table

__version__ = "0.1.0"

# The power module pulls in numba (JIT compilation of the simulation
# kernels); load it on first use so that table emission and conversions
# stay snappy from the command line.
_LAZY_ATTRS = {
    name: "power"
    for name in (
        "MdeResult",
        "PowerSpec",
        "SampleSizeResult",
        "SimConfig",
        "achieved_power_smd",
        "achieved_power_two_proportions",
        "mde_smd",
        "normal_cdf",
        "normal_quantile",
        "required_n_smd",
        "required_n_two_proportions",
        "simulate_power_smd",
        "simulate_power_two_proportions",
    )
}
_LAZY_ATTRS.update({name: "report" for name in ("Report", "render_report", "run_report")})

if TYPE_CHECKING:
    from .power import (
        MdeResult,
        PowerSpec,
        SampleSizeResult,
        SimConfig,
        achieved_power_smd,
        achieved_power_two_proportions,
        mde_smd,
        normal_cdf,
        normal_quantile,
        required_n_smd,
        required_n_two_proportions,
        simulate_power_smd,
        simulate_power_two_proportions,
    )
    from .report import Report, render_report, run_report


def __getattr__(name: str):
    if name in _LAZY_ATTRS:
        module = import_module(f".{_LAZY_ATTRS[name]}", __name__)
        value = getattr(module, name)
        globals()[name] = value
        return value
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__() -> list[str]:
    return sorted(set(globals()) | set(_LAZY_ATTRS))
