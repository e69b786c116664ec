"""
Is that effect size believable?
===============================

Textbook benchmarks (small 0.2 / medium 0.5 / large 0.8) come from
controlled lab research.  Well-evidenced population-scale interventions
rarely reach them: the embedded benchmark catalog tops out at 0.541, and
indirect mechanisms land one to two orders of magnitude lower.  The rule
screen turns those observations into a deterministic, documented check.
"""

from esplan import (
    IntensityClass,
    Mechanism,
    OutcomeProximity,
    Targeting,
    assess_plausibility,
    attenuate_indirect,
    benchmark_catalog,
)
from esplan.tables import emit_table

# ---------------------------------------------------------------------------
# What strong interventions have actually achieved
# ---------------------------------------------------------------------------
print(emit_table("benchmarks", "text"))
print("largest benchmark:", max(b.largest_smd for b in benchmark_catalog()))

# ---------------------------------------------------------------------------
# Indirect mechanisms attenuate hard
# ---------------------------------------------------------------------------
# Suppose a year of schooling lowers lifetime obesity risk by 0.16 SD, but
# the policy under study only adds 0.1 years of schooling on average:
expected = attenuate_indirect(0.16, 0.1)
print(f"expected policy effect: {expected.d:.3f} SD")

# ---------------------------------------------------------------------------
# Screening assumptions before they reach a power calculation
# ---------------------------------------------------------------------------
cases = [
    ("intensive home-visiting, direct proximal outcome", 0.35,
     IntensityClass.HIGH_TOUCH, Targeting.TARGETED,
     OutcomeProximity.PROXIMAL, Mechanism.DIRECT),
    ("mass-media campaign, distal outcome", 0.5,
     IntensityClass.LOW_TOUCH, Targeting.UNIVERSAL,
     OutcomeProximity.DISTAL, Mechanism.INDIRECT),
    ("anything at 0.9 SD", 0.9,
     IntensityClass.HIGH_TOUCH, Targeting.TARGETED,
     OutcomeProximity.PROXIMAL, Mechanism.DIRECT),
]
for label, d, *profile in cases:
    verdict = assess_plausibility(d, *profile)
    print(f"\n{label} (SMD {d}): {verdict.level}")
    for hit in verdict.triggered_rules:
        print(f"  {hit.rule}: {hit.rationale}")
