"""Golden display tables and format round trips.

The expected display cells below were computed independently of the table
renderer (formula evaluation plus decimal half-away-from-zero rounding)
and match the published correspondence and PAF reference grids.
"""

import csv
import io

import pytest

from esplan.tables import TableFormat, TableKind, emit_table, format_fixed

# (interpretation, smd, r, OR, RR@p0=0.01, RR@p0=0.20, RD@p0=0.01, RD@p0=0.20)
GOLDEN_CORRESPONDENCE = [
    ("Very small", "0.01", "0.00", "1.02", "1.02", "1.01", "0.000", "0.003"),
    ("-", "0.02", "0.01", "1.04", "1.04", "1.03", "0.000", "0.006"),
    ("-", "0.05", "0.02", "1.09", "1.09", "1.07", "0.001", "0.015"),
    ("-", "0.1", "0.05", "1.20", "1.20", "1.15", "0.002", "0.031"),
    ("-", "0.15", "0.07", "1.31", "1.31", "1.24", "0.003", "0.047"),
    ("Small", "0.2", "0.10", "1.44", "1.43", "1.32", "0.004", "0.064"),
    ("-", "0.3", "0.15", "1.72", "1.71", "1.51", "0.007", "0.101"),
    ("-", "0.4", "0.20", "2.07", "2.04", "1.70", "0.010", "0.141"),
    ("Medium", "0.5", "0.24", "2.48", "2.44", "1.91", "0.014", "0.182"),
    ("-", "0.6", "0.29", "2.97", "2.91", "2.13", "0.019", "0.226"),
    ("-", "0.7", "0.33", "3.56", "3.47", "2.35", "0.025", "0.271"),
    ("Large", "0.8", "0.37", "4.27", "4.13", "2.58", "0.031", "0.316"),
    ("-", "0.9", "0.41", "5.12", "4.91", "2.81", "0.039", "0.361"),
    ("-", "1", "0.45", "6.13", "5.83", "3.03", "0.048", "0.405"),
    ("-", "1.1", "0.48", "7.35", "6.91", "3.24", "0.059", "0.448"),
    ("Very large", "1.2", "0.51", "8.82", "8.18", "3.44", "0.072", "0.488"),
    ("-", "1.3", "0.54", "10.57", "9.65", "3.63", "0.086", "0.525"),
    ("-", "1.4", "0.57", "12.67", "11.35", "3.80", "0.103", "0.560"),
    ("-", "1.5", "0.60", "15.19", "13.30", "3.96", "0.123", "0.592"),
    ("-", "1.75", "0.66", "23.91", "19.45", "4.28", "0.185", "0.657"),
    ("Huge", "2", "0.71", "37.62", "27.54", "4.52", "0.265", "0.704"),
    ("-", "2.25", "0.75", "59.21", "37.42", "4.68", "0.364", "0.737"),
    ("-", "2.5", "0.78", "93.18", "48.48", "4.79", "0.475", "0.759"),
]

# (interpretation, smd, p0, PAF@pe=0.01, PAF@pe=0.20, PAF@pe=0.50)
GOLDEN_PAF_GRID = [
    ("Very small", "0.01", "0.01", "0.00", "0.00", "0.01"),
    ("Very small", "0.01", "0.2", "0.00", "0.00", "0.01"),
    ("Small", "0.2", "0.01", "0.00", "0.08", "0.18"),
    ("Small", "0.2", "0.2", "0.00", "0.06", "0.14"),
    ("Medium", "0.5", "0.01", "0.01", "0.22", "0.42"),
    ("Medium", "0.5", "0.2", "0.01", "0.15", "0.31"),
    ("Large", "0.8", "0.01", "0.03", "0.39", "0.61"),
    ("Large", "0.8", "0.2", "0.02", "0.24", "0.44"),
    ("Very large", "1.2", "0.01", "0.07", "0.59", "0.78"),
    ("Very large", "1.2", "0.2", "0.02", "0.33", "0.55"),
    ("Huge", "2", "0.01", "0.21", "0.84", "0.93"),
    ("Huge", "2", "0.2", "0.03", "0.41", "0.64"),
]


def csv_rows(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


class TestFormatFixed:
    @pytest.mark.parametrize(
        "x,nd,expected",
        [
            (0.045, 2, "0.05"),
            (-0.045, 2, "-0.05"),
            (0.0449, 2, "0.04"),
            (2.476632, 2, "2.48"),
            (0.0001, 3, "0.000"),
            (93.175, 2, "93.18"),
        ],
    )
    def test_half_away_from_zero(self, x, nd, expected):
        assert format_fixed(x, nd) == expected


class TestCorrespondenceGolden:
    def test_all_cells(self):
        rows = csv_rows(emit_table(TableKind.CORRESPONDENCE, TableFormat.CSV))
        header, data = rows[0], rows[1:]
        assert len(data) == 23
        displayed = [tuple(row[:8]) for row in data]
        assert displayed == [tuple(expected) for expected in GOLDEN_CORRESPONDENCE]

    def test_full_precision_columns_match_display(self):
        rows = csv_rows(emit_table(TableKind.CORRESPONDENCE, TableFormat.CSV))
        for row in rows[1:]:
            full = [float(x) for x in row[8:]]
            assert format_fixed(full[0], 2) == row[2]  # r
            assert format_fixed(full[1], 2) == row[3]  # OR
            assert format_fixed(full[2], 2) == row[4]
            assert format_fixed(full[3], 2) == row[5]
            assert format_fixed(full[4], 3) == row[6]
            assert format_fixed(full[5], 3) == row[7]


class TestPafGridGolden:
    def test_all_cells(self):
        rows = csv_rows(emit_table(TableKind.PAF_GRID, TableFormat.CSV))
        data = [tuple(row[:6]) for row in rows[1:]]
        assert data == [tuple(expected) for expected in GOLDEN_PAF_GRID]

    def test_text_layout(self):
        text = emit_table(TableKind.PAF_GRID, TableFormat.TEXT)
        lines = text.splitlines()
        assert len(lines) == 2 + 12  # header, rule, six SMD blocks of two rows


class TestBenchmarksTable:
    def test_five_rows(self):
        rows = csv_rows(emit_table(TableKind.BENCHMARKS, TableFormat.CSV))
        assert len(rows) == 6
        assert [row[3] for row in rows[1:]] == ["0.369", "0.016", "0.541", "0.208", "0.227"]

    def test_markdown_shape(self):
        md = emit_table(TableKind.BENCHMARKS, TableFormat.MARKDOWN)
        lines = md.splitlines()
        assert len(lines) == 7
        assert all(line.startswith("|") and line.endswith("|") for line in lines)


class TestCsvRoundTrip:
    @pytest.mark.parametrize("kind", list(TableKind))
    def test_parse_and_rerender_is_byte_identical(self, kind):
        original = emit_table(kind, TableFormat.CSV)
        rows = csv_rows(original)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        assert buf.getvalue() == original

    def test_full_precision_values_round_trip_through_float(self):
        original = emit_table(TableKind.CORRESPONDENCE, TableFormat.CSV)
        rows = csv_rows(original)
        header, data = rows[0], rows[1:]
        full_idx = [i for i, name in enumerate(header) if name.endswith("_full")]
        rebuilt = [list(row) for row in data]
        for row in rebuilt:
            for i in full_idx:
                row[i] = repr(float(row[i]))
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rebuilt)
        assert buf.getvalue() == original


class TestUnknownKinds:
    def test_bad_kind(self):
        with pytest.raises(ValueError):
            emit_table("nonsense")

    def test_bad_format(self):
        with pytest.raises(ValueError):
            emit_table(TableKind.BENCHMARKS, "yaml")
