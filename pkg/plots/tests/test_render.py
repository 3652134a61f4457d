import pytest

from v2iplots import PlotSpec, SchemaError, build_figure, render
from v2iplots.cli import main

from sample_csv import HEADER, VERIFY_ROWS, write_csv


def spec_for(paths, out):
    return PlotSpec(csv_paths=tuple(str(p) for p in paths), out_path=str(out))


def test_render_writes_nonempty_image(verify_csv, tmp_path):
    out = render(spec_for([verify_csv], tmp_path / "chart.png"))
    assert out.exists()
    assert out.stat().st_size > 0


def test_render_is_deterministic(verify_csv, tmp_path):
    first = render(spec_for([verify_csv], tmp_path / "a.png"))
    second = render(spec_for([verify_csv], tmp_path / "b.png"))
    assert first.read_bytes() == second.read_bytes()


def test_one_panel_per_mode(mixed_csv, tmp_path):
    fig = build_figure(spec_for([mixed_csv], tmp_path / "chart.png"))
    titles = sorted(ax.get_title() for ax in fig.axes)
    assert titles == ["decrypt", "verify"]


def test_two_csvs_overlay_with_legend(verify_csv, second_csv, tmp_path):
    fig = build_figure(spec_for([verify_csv, second_csv], tmp_path / "chart.png"))
    (ax,) = fig.axes
    legend = ax.get_legend()
    assert legend is not None
    labels = [text.get_text() for text in legend.get_texts()]
    assert labels == ["verify", "tuned"]


def test_single_csv_has_no_legend(verify_csv, tmp_path):
    fig = build_figure(spec_for([verify_csv], tmp_path / "chart.png"))
    (ax,) = fig.axes
    assert ax.get_legend() is None


def test_schema_error_propagates(tmp_path):
    path = write_csv(
        tmp_path / "short.csv",
        ["verify,1,2.5,2.4,5,4,0"],
        header=HEADER.replace(",p10_ms", ""),
    )
    with pytest.raises(SchemaError, match="p10_ms"):
        render(spec_for([path], tmp_path / "chart.png"))


def test_spec_requires_inputs_and_output(verify_csv):
    with pytest.raises(ValueError):
        PlotSpec(csv_paths=(), out_path="chart.png")
    with pytest.raises(ValueError):
        PlotSpec(csv_paths=(str(verify_csv),), out_path="")


def test_cli_success(verify_csv, tmp_path, capsys):
    out = tmp_path / "chart.png"
    assert main([str(verify_csv), "--out", str(out)]) == 0
    assert out.stat().st_size > 0
    assert str(out) in capsys.readouterr().out


def test_cli_schema_failure_names_column(tmp_path, capsys):
    path = write_csv(
        tmp_path / "short.csv",
        ["verify,1,2.5,2.4,5,4,0"],
        header=HEADER.replace(",p90_ms", ""),
    )
    assert main([str(path), "--out", str(tmp_path / "chart.png")]) == 2
    assert "p90_ms" in capsys.readouterr().err


def test_cli_usage_error(capsys):
    assert main([]) == 1
    assert "error" in capsys.readouterr().err
