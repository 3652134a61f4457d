"""Charts for benchmark CSVs produced by the v2isign bench tool."""

from .data import EXPECTED_COLUMNS, BenchRecord, SchemaError, read_records
from .render import PlotSpec, build_figure, render

__all__ = [
    "EXPECTED_COLUMNS",
    "BenchRecord",
    "SchemaError",
    "read_records",
    "PlotSpec",
    "build_figure",
    "render",
]

__version__ = "0.1.0"
