"""Reading and validation of benchmark CSV files.

The benchmark tool in the signing package emits one CSV row per measured
batch size.  This module turns those files into typed records and fails
loudly, naming the offending column, when a file does not match the
expected schema.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

# Column layout produced by the benchmark CSV writer.  Extra columns in an
# input file are tolerated so the schema can grow; missing ones are not.
EXPECTED_COLUMNS = (
    "mode",
    "n",
    "median_ms",
    "p10_ms",
    "p90_ms",
    "scalar_mults",
    "h1_calls",
    "h2_calls",
)

_INT_COLUMNS = ("n", "scalar_mults", "h1_calls", "h2_calls")
_FLOAT_COLUMNS = ("median_ms", "p10_ms", "p90_ms")


class SchemaError(Exception):
    """Raised when a CSV file does not conform to the benchmark schema."""


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark measurement: a mode and batch size with its timings."""

    mode: str
    n: int
    median_ms: float
    p10_ms: float
    p90_ms: float
    scalar_mults: int
    h1_calls: int
    h2_calls: int


def _parse_field(row: dict, column: str, kind: type, path: Path, line: int):
    raw = row[column]
    try:
        return kind(raw)
    except (TypeError, ValueError):
        raise SchemaError(
            f"column {column!r} has non-numeric value {raw!r}"
            f" (line {line} of {path})"
        ) from None


def read_records(path: str | Path) -> list[BenchRecord]:
    """Load one benchmark CSV, checking the header and every value.

    Raises SchemaError naming the first bad column when the header is
    missing a required column or a cell cannot be parsed.  Raises OSError
    when the file cannot be read at all.
    """
    path = Path(path)
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames
        if header is None:
            raise SchemaError(f"{path} is empty, expected a benchmark CSV header")
        missing = [name for name in EXPECTED_COLUMNS if name not in header]
        if missing:
            raise SchemaError(
                f"missing column {', '.join(repr(name) for name in missing)}"
                f" in {path}"
            )
        records = []
        for line, row in enumerate(reader, start=2):
            if any(row[name] is None for name in EXPECTED_COLUMNS):
                raise SchemaError(f"short row at line {line} of {path}")
            fields = {"mode": row["mode"]}
            for name in _INT_COLUMNS:
                fields[name] = _parse_field(row, name, int, path, line)
            for name in _FLOAT_COLUMNS:
                fields[name] = _parse_field(row, name, float, path, line)
            records.append(BenchRecord(**fields))
    if not records:
        raise SchemaError(f"{path} has a header but no data rows")
    return records
