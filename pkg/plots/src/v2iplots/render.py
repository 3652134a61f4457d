"""Chart rendering for benchmark CSVs.

Builds one panel per benchmark mode.  Each series plots the median
latency against batch size with a shaded band between the 10th and 90th
percentiles.  When several CSV files are given their series are overlaid
and distinguished by a legend.

Rendering is deterministic: the object-oriented Agg canvas is used
directly (no global pyplot state), style parameters are fixed constants,
and the image metadata is pinned so repeated renders of the same inputs
are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .data import BenchRecord, read_records

# Fixed palette (matplotlib's tab10) so series colors do not depend on any
# ambient style configuration.
_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

_PANEL_WIDTH = 6.4
_PANEL_HEIGHT = 3.0
_DPI = 100


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: which CSVs, where to write, and how to label it."""

    csv_paths: tuple[str, ...]
    out_path: str
    title: str = "benchmark timings"
    x_label: str = "batch size"
    y_label: str = "latency (ms)"

    def __post_init__(self):
        if not self.csv_paths:
            raise ValueError("at least one CSV path is required")
        if not self.out_path:
            raise ValueError("an output image path is required")


@dataclass
class _Series:
    label: str
    records: list[BenchRecord] = field(default_factory=list)


def _series_by_mode(paths: tuple[str, ...]) -> dict[str, list[_Series]]:
    """Group records mode-first, keeping one series per input file."""
    grouped: dict[str, list[_Series]] = {}
    for path in paths:
        label = Path(path).stem
        for record in read_records(path):
            panel = grouped.setdefault(record.mode, [])
            series = next((s for s in panel if s.label == label), None)
            if series is None:
                series = _Series(label)
                panel.append(series)
            series.records.append(record)
    for panel in grouped.values():
        for series in panel:
            series.records.sort(key=lambda record: record.n)
    return grouped


def build_figure(spec: PlotSpec) -> Figure:
    """Assemble the figure described by ``spec`` without writing it."""
    grouped = _series_by_mode(spec.csv_paths)
    modes = sorted(grouped)
    fig = Figure(
        figsize=(_PANEL_WIDTH, _PANEL_HEIGHT * len(modes)),
        dpi=_DPI,
        layout="constrained",
    )
    FigureCanvasAgg(fig)
    axes = fig.subplots(nrows=len(modes), squeeze=False)[:, 0]
    for ax, mode in zip(axes, modes):
        panel = grouped[mode]
        for index, series in enumerate(panel):
            color = _PALETTE[index % len(_PALETTE)]
            ns = [record.n for record in series.records]
            medians = [record.median_ms for record in series.records]
            lows = [record.p10_ms for record in series.records]
            highs = [record.p90_ms for record in series.records]
            ax.plot(ns, medians, color=color, marker="o", label=series.label)
            ax.fill_between(ns, lows, highs, color=color, alpha=0.25, linewidth=0)
        ax.set_title(mode, fontsize="medium")
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label)
        ax.grid(True, alpha=0.3)
        if len(panel) > 1:
            ax.legend()
    fig.suptitle(spec.title)
    return fig


def render(spec: PlotSpec) -> Path:
    """Render the chart described by ``spec`` and return its output path.

    The image format follows the output file extension.  PNG metadata is
    pinned to a constant so the bytes carry no timestamps or tool version
    strings.
    """
    fig = build_figure(spec)
    out = Path(spec.out_path)
    metadata = {"Software": "v2iplots"} if out.suffix.lower() == ".png" else None
    fig.savefig(out, metadata=metadata)
    return out
