"""
Converting effects between scales
=================================

A study reports its effect on one scale (an odds ratio, say) and your
power calculation needs another (a standardized mean difference).  This
walk-through covers the five supported scales and the conversion chain
r <-> SMD <-> OR <-> RR <-> RD.
"""

from esplan import (
    OddsRatioValue,
    RiskDifferenceValue,
    OutcomeContext,
    SmdValue,
    classify_magnitude,
    compute_pooled_sd,
    compute_smd,
    convert,
    invert_for_comparability,
)

# ---------------------------------------------------------------------------
# From summary statistics to an SMD
# ---------------------------------------------------------------------------
# A trial reports means 12.4 vs 10.1 with group SDs 4.9 (n=120) and 4.3 (n=135).
pooled = compute_pooled_sd(120, 4.9, 135, 4.3)
d = compute_smd(12.4, 10.1, pooled)
print(f"pooled SD = {pooled:.3f}, SMD = {d.d:.3f} ({classify_magnitude(d).value})")

# ---------------------------------------------------------------------------
# A protective odds ratio from the literature
# ---------------------------------------------------------------------------
# OR 0.70 for a harmful outcome.  For magnitude comparisons, ratios below 1
# are flipped to their reciprocal; the sign convention (negative SMD) keeps
# the direction if you stay on the signed scales instead.
reported = OddsRatioValue(0.70)
print("as magnitude:", invert_for_comparability(reported).or_)
print("as signed SMD:", convert(reported, "smd").d)

# ---------------------------------------------------------------------------
# Moving toward risk scales needs a baseline risk
# ---------------------------------------------------------------------------
# The same OR means a very different absolute risk change for a rare
# outcome (1%) than for a common one (20%).
for p0 in (0.01, 0.20):
    rr = convert(reported, "rr", OutcomeContext(p0))
    rd = convert(reported, "rd", OutcomeContext(p0))
    print(f"p0={p0:4}: RR = {rr.rr:.3f}, RD = {rd.rd:+.4f}")

# ---------------------------------------------------------------------------
# And back again: conversions invert cleanly
# ---------------------------------------------------------------------------
rd = RiskDifferenceValue(0.064, OutcomeContext(0.20))
print("RD 0.064 at p0=0.20 is SMD", round(convert(rd, "smd").d, 2))

# A medium effect (SMD 0.5) on every scale at once:
half = SmdValue(0.5)
print("SMD 0.5 ->",
      f"r={convert(half, 'r').r:.2f},",
      f"OR={convert(half, 'or').or_:.2f},",
      f"RR={convert(half, 'rr', 0.20).rr:.2f} (p0=0.20),",
      f"RD={convert(half, 'rd', 0.20).rd:.3f} (p0=0.20)")
