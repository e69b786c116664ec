"""Reference-table emission in aligned text, CSV, and Markdown.

Three tables are available:

* ``correspondence`` - the grid of equivalent effect sizes across all five
  scales at a rare (P0 = 0.01) and a common (P0 = 0.20) outcome;
* ``paf-grid``       - population attributable fractions over the default
  grid of effect sizes, baseline risks, and exposure prevalences;
* ``benchmarks``     - the embedded intervention benchmark catalog.

Display cells use the customary precisions (two decimals; three for risk
differences) with ties rounded away from zero.  CSV output additionally
carries full-precision columns (shortest round-tripping decimal form), so
parsing a CSV and re-rendering it reproduces the bytes exactly.
"""

from __future__ import annotations

import csv
import io
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

from .impact import paf_grid
from .measures import (
    COMMON_P0,
    RARE_P0,
    MagnitudeLabel,
    classify_magnitude,
    correspondence_grid,
)
from .plausibility import benchmark_catalog

__all__ = ["TableKind", "TableFormat", "emit_table", "format_fixed"]


class TableKind(str, Enum):
    CORRESPONDENCE = "correspondence"
    PAF_GRID = "paf-grid"
    BENCHMARKS = "benchmarks"


class TableFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"
    MARKDOWN = "markdown"


def format_fixed(x: float, decimals: int) -> str:
    """Fixed-point display with ties rounded away from zero (so 0.045
    prints as 0.05, -0.045 as -0.05)."""
    quantum = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_HALF_UP))


def _full(x: float) -> str:
    return repr(float(x))


def _smd_text(d: float) -> str:
    return f"{d:g}"


_LABEL_TEXT = {
    MagnitudeLabel.BELOW_VERY_SMALL: "Below very small",
    MagnitudeLabel.VERY_SMALL: "Very small",
    MagnitudeLabel.SMALL: "Small",
    MagnitudeLabel.MEDIUM: "Medium",
    MagnitudeLabel.LARGE: "Large",
    MagnitudeLabel.VERY_LARGE: "Very large",
    MagnitudeLabel.HUGE: "Huge",
}


def emit_table(which: TableKind | str, format: TableFormat | str = TableFormat.TEXT) -> str:
    """Render one of the reference tables in the requested format."""
    kind = TableKind(which)
    fmt = TableFormat(format)
    if kind is TableKind.CORRESPONDENCE:
        header, rows = _correspondence_cells(full_precision=fmt is TableFormat.CSV)
    elif kind is TableKind.PAF_GRID:
        header, rows = _paf_grid_cells(
            full_precision=fmt is TableFormat.CSV, repeat_block_keys=fmt is not TableFormat.TEXT
        )
    else:
        header, rows = _benchmark_cells()
    return _render(header, rows, fmt)


def _correspondence_cells(full_precision: bool) -> tuple[list[str], list[list[str]]]:
    header = [
        "interpretation",
        "smd",
        "r",
        "odds_ratio",
        f"rr_p0_{RARE_P0:g}",
        f"rr_p0_{COMMON_P0:g}",
        f"rd_p0_{RARE_P0:g}",
        f"rd_p0_{COMMON_P0:g}",
    ]
    if full_precision:
        header += [
            "r_full",
            "odds_ratio_full",
            f"rr_p0_{RARE_P0:g}_full",
            f"rr_p0_{COMMON_P0:g}_full",
            f"rd_p0_{RARE_P0:g}_full",
            f"rd_p0_{COMMON_P0:g}_full",
        ]
    rows = []
    last_label = None
    for row in correspondence_grid():
        label = _LABEL_TEXT[row.label] if row.label is not last_label else "-"
        last_label = row.label
        cells = [
            label,
            _smd_text(row.d),
            format_fixed(row.r, 2),
            format_fixed(row.odds_ratio, 2),
            format_fixed(row.rr_rare, 2),
            format_fixed(row.rr_common, 2),
            format_fixed(row.rd_rare, 3),
            format_fixed(row.rd_common, 3),
        ]
        if full_precision:
            cells += [
                _full(row.r),
                _full(row.odds_ratio),
                _full(row.rr_rare),
                _full(row.rr_common),
                _full(row.rd_rare),
                _full(row.rd_common),
            ]
        rows.append(cells)
    return header, rows


def _paf_grid_cells(
    full_precision: bool, repeat_block_keys: bool
) -> tuple[list[str], list[list[str]]]:
    grid = paf_grid()
    header = ["interpretation", "smd", "p0"] + [f"paf_pe_{pe:g}" for pe in grid.pes]
    if full_precision:
        header += [f"paf_pe_{pe:g}_full" for pe in grid.pes]
    rows = []
    last_d = None
    for (d, p0), row in zip(grid.row_keys, grid.rows):
        first_of_block = d != last_d
        last_d = d
        if first_of_block or repeat_block_keys:
            interp = _LABEL_TEXT[classify_magnitude(d)]
            smd_cell = _smd_text(d)
        else:
            interp = ""
            smd_cell = ""
        cells = [interp, smd_cell, _smd_text(p0)]
        cells += [format_fixed(cell.paf, 2) for cell in row]
        if full_precision:
            cells += [_full(cell.paf) for cell in row]
        rows.append(cells)
    return header, rows


def _benchmark_cells() -> tuple[list[str], list[list[str]]]:
    header = ["intervention", "intensity", "targeting", "largest_smd", "outcome", "source"]
    rows = [
        [
            entry.name,
            entry.intensity.value,
            entry.targeting.value,
            format_fixed(entry.largest_smd, 3),
            entry.outcome,
            entry.source,
        ]
        for entry in benchmark_catalog()
    ]
    return header, rows


def _render(header: list[str], rows: list[list[str]], fmt: TableFormat) -> str:
    if fmt is TableFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt is TableFormat.MARKDOWN:
        lines = [
            "| " + " | ".join(header) + " |",
            "| " + " | ".join("---" for _ in header) + " |",
        ]
        lines += ["| " + " | ".join(row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"
