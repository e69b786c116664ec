"""Analytic power and sample-size machinery, with a Monte Carlo oracle.

Everything here uses the two-sided normal approximation (z-test), for both
the analytic formulas and the simulated tests, so the two routes estimate
the same quantity:

    power(d, n) = Phi(|d| sqrt(n/2) - z_{1-a/2}) + Phi(-|d| sqrt(n/2) - z_{1-a/2})
    n/group     = 2 ((z_{1-a/2} + z_power) / d)^2          (continuous solution)
    d_min       = (z_{1-a/2} + z_power) sqrt(2/n)

and for two independent proportions p0 (control) and p1 (under the effect):

    n/group = (z_{1-a/2} sqrt(2 pbar(1-pbar)) + z_power sqrt(p1 q1 + p0 q0))^2
              / (p1 - p0)^2,   pbar = (p0 + p1)/2

Sample sizes are the smallest integers whose analytic power reaches the
target, with a floor of MIN_N_PER_GROUP per group because the normal
approximation degrades for tiny groups.

The standard-normal quantile is Wichura's AS 241 rational approximation
(PPND16).  Simulated draws are produced by the inverse-CDF transform of
Philox counter-based uniforms: replication ``i`` always consumes the same
fixed block of the counter stream, so simulation results depend only on
(inputs, seed, replication count), never on chunking or scheduling.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numba import njit, vectorize
from scipy.special import ndtr

from .errors import DomainError, UsageError
from .measures import OutcomeContext, RelativeRiskValue, RiskDifferenceValue

__all__ = [
    "PowerSpec",
    "SampleSizeResult",
    "MdeResult",
    "SimConfig",
    "MIN_N_PER_GROUP",
    "normal_quantile",
    "normal_cdf",
    "achieved_power_smd",
    "required_n_smd",
    "mde_smd",
    "achieved_power_two_proportions",
    "required_n_two_proportions",
    "simulate_power_smd",
    "simulate_power_two_proportions",
]

# Below this group size the z approximation is too optimistic to trust.
MIN_N_PER_GROUP = 4


@dataclass(frozen=True)
class PowerSpec:
    """Design targets: two-sided alpha, target power, allocation ratio."""

    alpha: float = 0.05
    target_power: float = 0.80
    allocation: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not (math.isfinite(self.target_power) and 0.0 < self.target_power < 1.0):
            raise DomainError(f"target_power must lie in (0, 1), got {self.target_power!r}")
        if not (math.isfinite(self.allocation) and self.allocation > 0.0):
            raise DomainError(f"allocation must be positive, got {self.allocation!r}")


@dataclass(frozen=True)
class SampleSizeResult:
    n_per_group: int
    n_total: int
    achieved_power_at_n: float


@dataclass(frozen=True)
class MdeResult:
    """Minimum detectable effect on the SMD scale for a given design."""

    d_min: float


@dataclass(frozen=True)
class SimConfig:
    """Replication count and seed for the Monte Carlo routines."""

    replications: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.replications, int) or self.replications < 1:
            raise DomainError(f"replications must be a positive integer, got {self.replications!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


# ---------------------------------------------------------------------------
# Standard-normal quantile and CDF
# ---------------------------------------------------------------------------

# AS 241 PPND16 coefficients (Wichura 1988); agrees with independent
# implementations to ~1e-14 across (0, 1), far inside the 1e-9 contract.


@njit(inline="always", cache=True)
def _ppnd16(p: float) -> float:
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r
                    + 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r
                  + 1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r
                + 1.3314166789178437745e+2) * r + 3.3871328727963666080)
        den = (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r
                    + 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r
                  + 5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r
                + 4.2313330701600911252e+1) * r + 1.0)
        return q * num / den
    r = p if q < 0.0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258) * r
                  + 3.64784832476320460504) * r + 5.76949722146069140550) * r
                + 4.63033784615654529590) * r + 1.42343711074968357734)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940) * r
                + 2.05319162663775882187) * r + 1.0)
        x = num / den
    else:
        r -= 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580) * r
                + 5.46378491116411436990) * r + 6.65790464350110377720)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
        x = num / den
    return -x if q < 0.0 else x


@vectorize(["float64(float64)"], nopython=True, cache=True)
def _quantile_ufunc(p: float) -> float:
    return _ppnd16(p)


def normal_quantile(p):
    """Inverse standard-normal CDF (AS 241), elementwise on arrays.

    Accepts a float or an array-like of probabilities strictly inside
    (0, 1); returns a float for scalar input, an ndarray otherwise.
    """
    arr = np.asarray(p, dtype=np.float64)
    if arr.size and (np.any(~np.isfinite(arr)) or np.any(arr <= 0.0) or np.any(arr >= 1.0)):
        raise DomainError("normal_quantile requires probabilities strictly inside (0, 1)")
    out = _quantile_ufunc(arr)
    return float(out) if arr.ndim == 0 else out


def normal_cdf(x):
    """Standard-normal CDF, elementwise on arrays."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.size and np.any(np.isnan(arr)):
        raise DomainError("normal_cdf requires non-NaN input")
    out = ndtr(arr)
    return float(out) if arr.ndim == 0 else out


def _z_crit(alpha: float) -> float:
    if not (math.isfinite(alpha) and 0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    return normal_quantile(1.0 - alpha / 2.0)


# ---------------------------------------------------------------------------
# Analytic power and sample size
# ---------------------------------------------------------------------------


def achieved_power_smd(d: float, n_per_group: int, alpha: float = 0.05) -> float:
    """Two-sided z-test power for a standardized mean difference d with
    n_per_group observations in each of two groups.  Equals alpha at d = 0."""
    if n_per_group < 2:
        raise DomainError(f"n_per_group must be at least 2, got {n_per_group}")
    z = _z_crit(alpha)
    shift = abs(float(d)) * math.sqrt(n_per_group / 2.0)
    return normal_cdf(shift - z) + normal_cdf(-shift - z)


def _require_equal_allocation(spec: PowerSpec, op: str) -> None:
    if spec.allocation != 1.0:
        raise UsageError(f"{op} supports 1:1 allocation only, got {spec.allocation}")


def required_n_smd(d: float, spec: PowerSpec = PowerSpec()) -> SampleSizeResult:
    """Smallest per-group n whose analytic z-test power reaches the target.

    Group sizes below MIN_N_PER_GROUP are raised to that floor (with a
    warning): the normal approximation is not trustworthy for smaller
    groups.
    """
    _require_equal_allocation(spec, "required_n_smd")
    d = float(d)
    if d == 0.0:
        raise DomainError("no finite sample size detects a null effect (d = 0)")
    if not math.isfinite(d):
        raise DomainError(f"d must be finite, got {d!r}")
    z_a = _z_crit(spec.alpha)
    z_b = normal_quantile(spec.target_power)
    n = max(2, math.ceil(2.0 * ((z_a + z_b) / d) ** 2))
    while n > 2 and achieved_power_smd(d, n - 1, spec.alpha) >= spec.target_power:
        n -= 1
    while achieved_power_smd(d, n, spec.alpha) < spec.target_power:
        n += 1
    if n < MIN_N_PER_GROUP:
        warnings.warn(
            f"required_n_smd: raising n per group from {n} to the floor of "
            f"{MIN_N_PER_GROUP}; the z approximation degrades below that",
            stacklevel=2,
        )
        n = MIN_N_PER_GROUP
    return SampleSizeResult(
        n_per_group=n,
        n_total=2 * n,
        achieved_power_at_n=achieved_power_smd(d, n, spec.alpha),
    )


def mde_smd(n_per_group: int, spec: PowerSpec = PowerSpec()) -> MdeResult:
    """Minimum detectable SMD: d_min = (z_{1-a/2} + z_power) sqrt(2/n)."""
    _require_equal_allocation(spec, "mde_smd")
    if n_per_group < 2:
        raise DomainError(f"n_per_group must be at least 2, got {n_per_group}")
    z_a = _z_crit(spec.alpha)
    z_b = normal_quantile(spec.target_power)
    return MdeResult(d_min=(z_a + z_b) * math.sqrt(2.0 / n_per_group))


def _risk_under_effect(
    context: OutcomeContext,
    effect: RelativeRiskValue | RiskDifferenceValue,
    allow_null: bool = False,
) -> float:
    """Exposed-group risk implied by the effect at the given baseline."""
    if not isinstance(effect, (RelativeRiskValue, RiskDifferenceValue)):
        raise UsageError(
            "two-proportion calculations take a relative-risk or risk-difference "
            f"effect, got {type(effect).__name__}"
        )
    if effect.context.p0 != context.p0:
        raise UsageError(
            f"effect carries baseline risk {effect.context.p0} but {context.p0} was "
            "given; convert the effect to the intended baseline first"
        )
    if isinstance(effect, RelativeRiskValue):
        p1 = context.p0 * effect.rr
    else:
        p1 = context.p0 + effect.rd
    if not 0.0 < p1 < 1.0:
        raise DomainError(
            f"the effect implies an exposed-group risk of {p1:.6g}, outside (0, 1); "
            "the normal-approximation design formulas do not apply"
        )
    if p1 == context.p0 and not allow_null:
        raise DomainError("the effect leaves the risk unchanged; no design can detect it")
    return p1


def achieved_power_two_proportions(
    context: OutcomeContext | float,
    effect: RelativeRiskValue | RiskDifferenceValue,
    n_per_group: int,
    alpha: float = 0.05,
) -> float:
    """Two-sided two-proportion z-test power at n_per_group per group."""
    if n_per_group < 2:
        raise DomainError(f"n_per_group must be at least 2, got {n_per_group}")
    ctx = context if isinstance(context, OutcomeContext) else OutcomeContext(context)
    p0 = ctx.p0
    p1 = _risk_under_effect(ctx, effect, allow_null=True)
    z = _z_crit(alpha)
    pbar = 0.5 * (p0 + p1)
    se0 = math.sqrt(2.0 * pbar * (1.0 - pbar) / n_per_group)
    se1 = math.sqrt((p1 * (1.0 - p1) + p0 * (1.0 - p0)) / n_per_group)
    delta = abs(p1 - p0)
    return normal_cdf((delta - z * se0) / se1) + normal_cdf((-delta - z * se0) / se1)


def required_n_two_proportions(
    context: OutcomeContext | float,
    effect: RelativeRiskValue | RiskDifferenceValue,
    spec: PowerSpec = PowerSpec(),
) -> SampleSizeResult:
    """Smallest per-group n for a two-proportion comparison at the given
    baseline risk, under the pooled-variance normal approximation."""
    _require_equal_allocation(spec, "required_n_two_proportions")
    ctx = context if isinstance(context, OutcomeContext) else OutcomeContext(context)
    p0 = ctx.p0
    p1 = _risk_under_effect(ctx, effect)
    z_a = _z_crit(spec.alpha)
    z_b = normal_quantile(spec.target_power)
    pbar = 0.5 * (p0 + p1)
    num = z_a * math.sqrt(2.0 * pbar * (1.0 - pbar)) + z_b * math.sqrt(
        p1 * (1.0 - p1) + p0 * (1.0 - p0)
    )
    n = max(2, math.ceil((num / (p1 - p0)) ** 2))
    while n > 2 and achieved_power_two_proportions(ctx, effect, n - 1, spec.alpha) >= spec.target_power:
        n -= 1
    while achieved_power_two_proportions(ctx, effect, n, spec.alpha) < spec.target_power:
        n += 1
    if n < MIN_N_PER_GROUP:
        warnings.warn(
            f"required_n_two_proportions: raising n per group from {n} to the floor "
            f"of {MIN_N_PER_GROUP}; the normal approximation degrades below that",
            stacklevel=2,
        )
        n = MIN_N_PER_GROUP
    return SampleSizeResult(
        n_per_group=n,
        n_total=2 * n,
        achieved_power_at_n=achieved_power_two_proportions(ctx, effect, n, spec.alpha),
    )


# ---------------------------------------------------------------------------
# Monte Carlo oracle
# ---------------------------------------------------------------------------

# Keep chunks around this many uniforms so working buffers stay cache-sized.
# Chunking never affects results: replication i always reads words
# [i * W, (i + 1) * W) of the Philox stream, W its padded draw width.
_CHUNK_TARGET_WORDS = 4_000_000

# Largest double below 1; uniforms are nudged off the closed endpoints.
_ONE_BELOW = 1.0 - 2.0**-53
_HALF_ULP = 2.0**-54


def _words_per_replication(n_per_group: int) -> int:
    # Philox advances in blocks of four 64-bit words; pad so every
    # replication starts block-aligned.
    return (2 * n_per_group + 3) // 4 * 4


def _uniform_block(seed: int, words_per_rep: int, rep_start: int, reps: int) -> np.ndarray:
    bit_gen = np.random.Philox(key=seed)
    bit_gen.advance(rep_start * (words_per_rep // 4))
    u = np.random.Generator(bit_gen).random(reps * words_per_rep)
    # Shift the [0, 1) lattice to cell centers in the open interval.
    u += _HALF_ULP
    np.minimum(u, _ONE_BELOW, out=u)
    return u.reshape(reps, words_per_rep)


@njit(cache=True)
def _smd_rejections(u: np.ndarray, n: int, d: float, z_crit: float) -> int:
    count = 0
    for i in range(u.shape[0]):
        s1 = 0.0
        q1 = 0.0
        s2 = 0.0
        q2 = 0.0
        for j in range(n):
            z = _ppnd16(u[i, j]) + d
            s1 += z
            q1 += z * z
        for j in range(n, 2 * n):
            z = _ppnd16(u[i, j])
            s2 += z
            q2 += z * z
        pooled_var = (q1 - s1 * s1 / n + q2 - s2 * s2 / n) / (2 * n - 2)
        diff = (s1 - s2) / n
        if pooled_var > 0.0:
            if abs(diff) > z_crit * math.sqrt(pooled_var * 2.0 / n):
                count += 1
        elif diff != 0.0:
            count += 1
    return count


@njit(cache=True)
def _two_prop_rejections(u: np.ndarray, n: int, p1: float, p0: float, z_crit: float) -> int:
    count = 0
    for i in range(u.shape[0]):
        c1 = 0
        c2 = 0
        for j in range(n):
            if u[i, j] < p1:
                c1 += 1
        for j in range(n, 2 * n):
            if u[i, j] < p0:
                c2 += 1
        pooled = (c1 + c2) / (2.0 * n)
        if 0.0 < pooled < 1.0:
            se = math.sqrt(pooled * (1.0 - pooled) * 2.0 / n)
            if abs((c1 - c2) / n) > z_crit * se:
                count += 1
    return count


def _run_simulation(kernel, kernel_args: tuple, n_per_group: int, sim: SimConfig) -> float:
    words = _words_per_replication(n_per_group)
    reps_per_chunk = max(1, _CHUNK_TARGET_WORDS // words)
    done = 0
    rejections = 0
    while done < sim.replications:
        reps = min(reps_per_chunk, sim.replications - done)
        u = _uniform_block(sim.seed, words, done, reps)
        rejections += kernel(u, n_per_group, *kernel_args)
        done += reps
    return rejections / sim.replications


def simulate_power_smd(
    d: float, n_per_group: int, alpha: float = 0.05, sim: SimConfig = SimConfig()
) -> float:
    """Empirical rejection rate of the pooled-variance two-sample test.

    Each replication draws two groups of ``n_per_group`` unit-variance
    normals with mean gap ``d`` (inverse-CDF transform of Philox
    uniforms) and applies the pooled-variance test with the two-sided
    z critical value.  Deterministic for fixed (inputs, seed,
    replications), independent of internal chunking.
    """
    d = float(d)
    if not math.isfinite(d):
        raise DomainError(f"d must be finite, got {d!r}")
    if n_per_group < 2:
        raise DomainError(f"n_per_group must be at least 2, got {n_per_group}")
    z = _z_crit(alpha)
    return _run_simulation(_smd_rejections, (d, z), n_per_group, sim)


def simulate_power_two_proportions(
    context: OutcomeContext | float,
    effect: RelativeRiskValue | RiskDifferenceValue,
    n_per_group: int,
    alpha: float = 0.05,
    sim: SimConfig = SimConfig(),
) -> float:
    """Empirical rejection rate of the two-proportion z-test under
    binomial sampling at the risks implied by the effect.

    Same determinism contract as :func:`simulate_power_smd`.
    """
    if n_per_group < 2:
        raise DomainError(f"n_per_group must be at least 2, got {n_per_group}")
    ctx = context if isinstance(context, OutcomeContext) else OutcomeContext(context)
    p1 = _risk_under_effect(ctx, effect, allow_null=True)
    z = _z_crit(alpha)
    return _run_simulation(_two_prop_rejections, (p1, ctx.p0, z), n_per_group, sim)
