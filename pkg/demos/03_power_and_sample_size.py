"""
Power, sample size, and the Monte Carlo cross-check
===================================================

Analytic answers come from the two-sided z approximation; a seeded
simulation oracle replays the actual test on synthetic data to confirm
them.  Small effects translate into startling sample sizes, which is the
budget reality behind many study designs.
"""

from esplan import (
    OutcomeContext,
    PowerSpec,
    RiskDifferenceValue,
    SimConfig,
    achieved_power_smd,
    mde_smd,
    required_n_smd,
    required_n_two_proportions,
    simulate_power_smd,
    simulate_power_two_proportions,
)

# ---------------------------------------------------------------------------
# Sample size scales with the inverse square of the effect
# ---------------------------------------------------------------------------
spec = PowerSpec(alpha=0.05, target_power=0.80)
for d in (0.5, 0.2, 0.1, 0.016):
    n = required_n_smd(d, spec)
    print(f"SMD {d:5}: n = {n.n_per_group:>6} per group "
          f"(power {n.achieved_power_at_n:.3f})")

# ---------------------------------------------------------------------------
# Minimum detectable effect: what a fixed budget can see
# ---------------------------------------------------------------------------
for n in (100, 500, 2000, 20000):
    print(f"n = {n:>6}/group detects SMD >= {mde_smd(n, spec).d_min:.4f}")

# ---------------------------------------------------------------------------
# Binary outcomes: the two-proportion route
# ---------------------------------------------------------------------------
ctx = OutcomeContext(0.20)
effect = RiskDifferenceValue(0.064, ctx)  # 20% -> 26.4%
n2 = required_n_two_proportions(ctx, effect, spec)
print(f"risk 0.20 -> 0.264: n = {n2.n_per_group} per group")

# ---------------------------------------------------------------------------
# Trust but verify: the simulation oracle
# ---------------------------------------------------------------------------
# Each replication draws both groups and applies the pooled-variance test.
# Fixed seed => bit-identical results, chunking and scheduling can't leak in.
sim = SimConfig(replications=100_000, seed=42)
analytic = achieved_power_smd(0.5, 64, 0.05)
empirical = simulate_power_smd(0.5, 64, 0.05, sim)
print(f"SMD 0.5, n=64: analytic {analytic:.4f} vs simulated {empirical:.4f}")

empirical2 = simulate_power_two_proportions(ctx, effect, n2.n_per_group, 0.05, sim)
print(f"two-proportion design at its required n: simulated power {empirical2:.4f}")

# Null calibration: with no effect, rejections should occur at the alpha rate.
print("type-I error at d=0:",
      simulate_power_smd(0.0, 200, 0.05, SimConfig(replications=100_000, seed=7)))
