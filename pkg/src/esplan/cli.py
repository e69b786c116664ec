"""Command-line interface.

One subcommand per operation family::

    convert    translate an effect between scales
    paf        population attributable fraction for one setting
    power      required sample size, or achieved power at a given n
    mde        minimum detectable effect at a given n
    simulate   Monte Carlo check of the analytic power machinery
    assess     plausibility screen for an effect-size assumption
    attenuate  expected effect of an indirect mechanism
    table      emit a reference table (text, CSV, or Markdown)
    report     full planning report for a scenario

Inputs come from flags, from a ``key = value`` scenario file
(``--scenario``), or both; flags override file values.  Exit status is 0
on success, 1 for validation problems, 2 for mathematical domain errors;
diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import EsplanError, ScenarioError
from .measures import Scale, convert
from .plausibility import ADVISORY_NOTE, attenuate_indirect
from .scenario import Scenario, parse_scenario_entries, scenario_from_entries
from .tables import TableFormat, TableKind, emit_table

# Outside any empirically observed range; almost certainly an input slip.
_EXTREME_SMD = 10.0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage problems, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_effect_flags(p: argparse.ArgumentParser, with_pe: bool = False) -> None:
    p.add_argument("--scenario", metavar="PATH", help="scenario file (key = value lines)")
    p.add_argument(
        "--from",
        dest="from_scale",
        choices=[s.value for s in Scale],
        help="scale of --value (default smd)",
    )
    p.add_argument("--value", help="effect size on the --from scale")
    p.add_argument("--p0", help="baseline risk of the outcome among the unexposed")
    if with_pe:
        p.add_argument("--pe", help="proportion of the population exposed/treated")


def _add_design_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", help="two-sided significance level (default 0.05)")
    p.add_argument("--power", help="target power (default 0.80)")


def _add_trait_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--intensity", choices=["high", "medium", "low"])
    p.add_argument("--targeting", choices=["universal", "targeted"])
    p.add_argument("--proximity", choices=["proximal", "distal"])
    p.add_argument("--mechanism", choices=["direct", "indirect"])


_FLAG_TO_KEY = (
    ("from_scale", "effect_scale", "--from"),
    ("value", "effect_value", "--value"),
    ("p0", "p0", "--p0"),
    ("pe", "pe", "--pe"),
    ("alpha", "alpha", "--alpha"),
    ("power", "target_power", "--power"),
    ("intensity", "intensity", "--intensity"),
    ("targeting", "targeting", "--targeting"),
    ("proximity", "proximity", "--proximity"),
    ("mechanism", "mechanism", "--mechanism"),
    ("per_unit", "mechanism_effect_per_unit", "--per-unit"),
    ("change", "mechanism_change", "--change"),
)


def _entries_from_args(args: argparse.Namespace) -> dict[str, tuple[str, str]]:
    entries: dict[str, tuple[str, str]] = {}
    if getattr(args, "scenario", None):
        entries.update(parse_scenario_entries(Path(args.scenario).read_text(encoding="utf-8")))
    for attr, key, flag in _FLAG_TO_KEY:
        value = getattr(args, attr, None)
        if value is not None:
            entries[key] = (str(value), flag)
    if "effect_value" in entries and "effect_scale" not in entries:
        entries["effect_scale"] = ("smd", "default")
    return entries


def _scenario(args: argparse.Namespace) -> Scenario:
    scn = scenario_from_entries(_entries_from_args(args))
    try:
        smd = convert(scn.effect, Scale.SMD)
    except EsplanError:
        # Not expressible as an SMD (e.g. an RR at the certainty boundary);
        # commands that need the failing link will report it themselves.
        return scn
    if abs(smd.d) > _EXTREME_SMD:
        print(
            f"warning: |SMD| = {abs(smd.d):.3g} is outside any empirically observed "
            "range; check the input",
            file=sys.stderr,
        )
    return scn


def _require(scn: Scenario, field: str, flag: str):
    value = getattr(scn, field)
    if value is None:
        raise ScenarioError([f"{field}: required for this command (set {flag})"])
    return value


def _cmd_convert(args: argparse.Namespace) -> None:
    scn = _scenario(args)
    target = Scale(args.to)
    result = convert(scn.effect, target, scn.p0)
    print(repr(result.value))


def _cmd_paf(args: argparse.Namespace) -> None:
    from .impact import paf_from_rr, paf_from_smd

    scn = _scenario(args)
    pe = _require(scn, "pe", "--pe")
    if scn.effect.scale in (Scale.RELATIVE_RISK, Scale.RISK_DIFFERENCE):
        rr = convert(scn.effect, Scale.RELATIVE_RISK)
        result = paf_from_rr(rr, pe)
    else:
        p0 = _require(scn, "p0", "--p0")
        d = convert(scn.effect, Scale.SMD)
        result = paf_from_smd(d, p0, pe)
    print(repr(result.paf))


def _power_inputs(scn: Scenario):
    from . import power as pw

    spec = pw.PowerSpec(alpha=scn.alpha, target_power=scn.target_power)
    if scn.effect.scale in (Scale.RELATIVE_RISK, Scale.RISK_DIFFERENCE):
        return spec, scn.p0, scn.effect
    return spec, None, convert(scn.effect, Scale.SMD)


def _cmd_power(args: argparse.Namespace) -> None:
    from . import power as pw

    scn = _scenario(args)
    spec, context, effect = _power_inputs(scn)
    if args.n is not None:
        if context is not None:
            achieved = pw.achieved_power_two_proportions(context, effect, args.n, scn.alpha)
        else:
            achieved = pw.achieved_power_smd(effect.d, args.n, scn.alpha)
        print(repr(achieved))
        return
    if context is not None:
        result = pw.required_n_two_proportions(context, effect, spec)
    else:
        result = pw.required_n_smd(effect.d, spec)
    print(
        f"n_per_group={result.n_per_group} n_total={result.n_total} "
        f"achieved_power={result.achieved_power_at_n!r}"
    )


def _float_entry(
    entries: dict[str, tuple[str, str]], key: str, default: float, errors: list[str]
) -> float:
    if key not in entries:
        return default
    raw, origin = entries[key]
    try:
        return float(raw)
    except ValueError:
        errors.append(f"{key}: not a number: {raw!r} ({origin})")
        return default


def _cmd_mde(args: argparse.Namespace) -> None:
    from . import power as pw

    entries = _entries_from_args(args)
    errors: list[str] = []
    alpha = _float_entry(entries, "alpha", 0.05, errors)
    target = _float_entry(entries, "target_power", 0.80, errors)
    if errors:
        raise ScenarioError(errors)
    result = pw.mde_smd(args.n, pw.PowerSpec(alpha=alpha, target_power=target))
    print(repr(result.d_min))


def _cmd_simulate(args: argparse.Namespace) -> None:
    from . import power as pw

    scn = _scenario(args)
    sim = pw.SimConfig(replications=args.reps, seed=args.seed)
    _, context, effect = _power_inputs(scn)
    if context is not None:
        value = pw.simulate_power_two_proportions(context, effect, args.n, scn.alpha, sim)
    else:
        value = pw.simulate_power_smd(effect.d, args.n, scn.alpha, sim)
    print(repr(value))


def _cmd_assess(args: argparse.Namespace) -> None:
    from .plausibility import assess_plausibility
    from .report import _FAVORABLE_FLAGS

    scn = _scenario(args)
    d = convert(scn.effect, Scale.SMD)
    assumed = [name for name in _FAVORABLE_FLAGS if getattr(scn, name) is None]
    verdict = assess_plausibility(
        d,
        scn.intensity or _FAVORABLE_FLAGS["intensity"],
        scn.targeting or _FAVORABLE_FLAGS["targeting"],
        scn.proximity or _FAVORABLE_FLAGS["proximity"],
        scn.mechanism or _FAVORABLE_FLAGS["mechanism"],
    )
    print(f"verdict: {verdict.level}")
    for hit in verdict.triggered_rules:
        print(f"{hit.rule}: {hit.rationale}")
    if assumed:
        print("unspecified traits assumed most favorable: " + ", ".join(assumed))
    print(f"note: {ADVISORY_NOTE}")


def _cmd_attenuate(args: argparse.Namespace) -> None:
    per_unit, change = args.per_unit, args.change
    if args.scenario:
        scn = _scenario(args)
        per_unit = scn.mechanism_effect_per_unit
        change = scn.mechanism_change
    missing = []
    if per_unit is None:
        missing.append("mechanism_effect_per_unit: required for this command (set --per-unit)")
    if change is None:
        missing.append("mechanism_change: required for this command (set --change)")
    if missing:
        raise ScenarioError(missing)
    print(repr(attenuate_indirect(float(per_unit), float(change)).d))


def _cmd_table(args: argparse.Namespace) -> None:
    sys.stdout.write(emit_table(TableKind(args.which), TableFormat(args.format)))


def _cmd_report(args: argparse.Namespace) -> None:
    from .report import render_report, run_report

    scn = _scenario(args)
    sys.stdout.write(render_report(run_report(scn)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="esplan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="translate an effect between scales")
    _add_effect_flags(p)
    p.add_argument("--to", required=True, choices=[s.value for s in Scale])
    p.set_defaults(handler=_cmd_convert)

    p = sub.add_parser("paf", help="population attributable fraction")
    _add_effect_flags(p, with_pe=True)
    p.set_defaults(handler=_cmd_paf)

    p = sub.add_parser("power", help="required n, or achieved power at --n")
    _add_effect_flags(p)
    _add_design_flags(p)
    p.add_argument("--n", type=int, help="per-group size; when given, reports achieved power")
    p.set_defaults(handler=_cmd_power)

    p = sub.add_parser("mde", help="minimum detectable effect at --n")
    p.add_argument("--scenario", metavar="PATH")
    p.add_argument("--n", type=int, required=True)
    _add_design_flags(p)
    p.set_defaults(handler=_cmd_mde)

    p = sub.add_parser("simulate", help="Monte Carlo power estimate")
    _add_effect_flags(p)
    p.add_argument("--alpha", help="two-sided significance level (default 0.05)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("assess", help="plausibility screen")
    _add_effect_flags(p)
    _add_trait_flags(p)
    p.set_defaults(handler=_cmd_assess)

    p = sub.add_parser("attenuate", help="effect expected from an indirect mechanism")
    p.add_argument("--scenario", metavar="PATH")
    p.add_argument("--per-unit", dest="per_unit", type=float,
                   help="effect (SMD) per unit of the intermediary")
    p.add_argument("--change", type=float,
                   help="units of intermediary change the intervention induces")
    p.set_defaults(handler=_cmd_attenuate)

    p = sub.add_parser("table", help="emit a reference table")
    p.add_argument("--which", required=True, choices=[k.value for k in TableKind])
    p.add_argument("--format", default="text", choices=[f.value for f in TableFormat])
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("report", help="full planning report")
    _add_effect_flags(p, with_pe=True)
    _add_design_flags(p)
    _add_trait_flags(p)
    p.add_argument("--per-unit", dest="per_unit",
                   help="effect (SMD) per unit of the intermediary")
    p.add_argument("--change", help="units of intermediary change induced")
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.handler(args)
    except ScenarioError as exc:
        for message in exc.errors:
            print(f"error: {message}", file=sys.stderr)
        return 1
    except EsplanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
