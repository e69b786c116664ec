"""
Scenario files and the one-shot planning report
===============================================

A scenario file captures a what-if in flat ``key = value`` text; the
report ties every module together: the effect on all scales, population
impact, design cost, and the plausibility screen.  The same workflow is
available from the shell as ``esplan report --scenario <file>`` (see the
command-line help for the full set of subcommands).
"""

from pathlib import Path

from esplan import parse_scenario, render_report, run_report
from esplan.errors import ScenarioError

scenario_path = Path(__file__).with_name("example_scenario.txt")
scenario = parse_scenario(scenario_path.read_text(encoding="utf-8"))

report = run_report(scenario)
print(render_report(report))

# Every report field is also available programmatically:
print("machine-readable excerpts:")
print("  SMD equivalent:", round(report.smd, 4))
print("  required n/group:", report.sample_size.n_per_group)
print("  PAF at scenario pe:",
      round(next(c.paf for c in report.paf_sweep if c.pe == scenario.pe.pe), 4))
print("  verdict:", report.verdict.level)

# Validation gathers every problem at once, naming keys and lines:
try:
    parse_scenario("effect_scale = rr\neffect_value = 6\np0 = 0.2\ntypo = 1\n")
except ScenarioError as exc:
    print("\nexample of a rejected scenario:")
    for message in exc.errors:
        print("  " + message)
