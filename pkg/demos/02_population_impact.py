"""
From individual effect to population impact
===========================================

The population attributable fraction (PAF) answers: what share of the
adverse outcome would universalizing the intervention avert?  It depends
as much on outcome frequency and rollout coverage as on the effect size
itself, which is why a "medium" effect can be nearly irrelevant or
transformative depending on the setting.
"""

from esplan import paf_from_rr, paf_from_smd, paf_grid
from esplan.tables import emit_table

# ---------------------------------------------------------------------------
# One effect, four very different populations
# ---------------------------------------------------------------------------
# A medium individual effect (SMD 0.5):
for p0, pe, setting in [
    (0.20, 0.01, "common outcome, 1% of people reached"),
    (0.20, 0.50, "common outcome, half of people reached"),
    (0.01, 0.01, "rare outcome, 1% reached"),
    (0.01, 0.50, "rare outcome, half reached"),
]:
    paf = paf_from_smd(0.5, p0, pe).paf
    print(f"PAF = {paf:.2f}  ({setting})")

# The same story holds working directly from a relative risk:
print("RR 3.0 covering a quarter of the population:",
      round(paf_from_rr(3.0, 0.25).paf, 4))

# ---------------------------------------------------------------------------
# The full reference grid
# ---------------------------------------------------------------------------
# Rows pair each effect size with a rare (1%) and common (20%) outcome;
# columns sweep rollout coverage.  Note how the tiny SMD of 0.01 already
# yields a visible PAF once half the population is covered.
print()
print(emit_table("paf-grid", "text"))

# Grids over custom axes are one call away:
custom = paf_grid(ds=[0.1, 0.3], p0s=[0.05], pes=[0.25, 0.75, 1.0])
for (d, p0), row in zip(custom.row_keys, custom.rows):
    cells = ", ".join(f"pe={c.pe:g}: {c.paf:.3f}" for c in row)
    print(f"SMD {d} at p0={p0}: {cells}")
