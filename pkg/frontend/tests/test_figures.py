import hashlib
import math

import numpy as np
import pytest

from steerplots import ColumnError, FigureSpec, PlotError, build_figure, render

RESULTS_HEADER = (
    "drop,mode,strategy,theta_u_tx,phi_u_tx,theta_u_rx,phi_u_rx,"
    "snr_tx_db,snr_rx_db,inr_rx_db,r_tx,r_rx,r_sum,kappa_sum,measurements"
)


def results_fixture(path):
    rows = [RESULTS_HEADER]
    inr_conv = [18.0, 5.0, 25.0]
    inr_steer = [-8.0, -7.5, 2.0]
    meas = [1, 40, 625]
    for drop in range(3):
        common = f"{drop},DL-DL"
        tail = "2.1,1.9,4.0,0.61"
        rows.append(f"{common},TDD,0,0,0,0,10,10,-inf,1.7,1.7,3.4,0.5,0")
        rows.append(f"{common},TDD-PC,0,0,0,0,10,10,-inf,2.2,2.2,4.4,0.64,0")
        rows.append(f"{common},FD-CONV,0,0,0,0,10,10,{inr_conv[drop]},{tail},0")
        rows.append(f"{common},FD-STEER,0,0,0,0,9.8,9.7,{inr_steer[drop]},{tail},{meas[drop]}")
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path


def sweep_snr_fixture(path, kappa_fd_steer=(0.3, 0.55, 0.6, 0.8)):
    lines = ["snr_tx_db,snr_rx_db,kappa_tdd,kappa_tdd_pc,kappa_fd_conv,kappa_fd_steer"]
    points = [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0), (10.0, 10.0)]
    for (tx, rx), k in zip(points, kappa_fd_steer):
        lines.append(f"{tx},{rx},0.5,0.62,{k / 2},{k}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def sweep_target_fixture(path):
    lines = ["target_db,kappa_tdd,kappa_tdd_pc,kappa_fd_conv,kappa_fd_steer"]
    for target, k in [("-inf", 0.71), ("-7", 0.67), ("0", 0.62)]:
        lines.append(f"{target},0.5,0.62,0.43,{k}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def fixture_for(kind, tmp_path):
    if kind in ("inr_cdf", "sinr_gap_cdf", "measurement_fraction_cdf"):
        return results_fixture(tmp_path / "results.csv")
    if kind in ("kappa_vs_snr", "kappa_heatmap", "boundary_contour"):
        return sweep_snr_fixture(tmp_path / "sweep_snr.csv")
    return sweep_target_fixture(tmp_path / "sweep_target.csv")


ALL_KINDS = (
    "inr_cdf",
    "sinr_gap_cdf",
    "kappa_vs_snr",
    "kappa_vs_target",
    "kappa_heatmap",
    "boundary_contour",
    "measurement_fraction_cdf",
)


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("ext", ["svg", "png"])
def test_every_kind_renders(kind, ext, tmp_path):
    src = fixture_for(kind, tmp_path)
    out = tmp_path / f"{kind}.{ext}"
    render(FigureSpec(kind=kind, inputs=(src,), output=out))
    assert out.exists() and out.stat().st_size > 0


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_svg_rerender_is_byte_stable(kind, tmp_path):
    src = fixture_for(kind, tmp_path)
    out_a = tmp_path / "a.svg"
    out_b = tmp_path / "b.svg"
    render(FigureSpec(kind=kind, inputs=(src,), output=out_a))
    render(FigureSpec(kind=kind, inputs=(src,), output=out_b))
    assert out_a.read_bytes() == out_b.read_bytes()


def test_rendering_does_not_mutate_input(tmp_path):
    src = results_fixture(tmp_path / "results.csv")
    before = hashlib.sha256(src.read_bytes()).hexdigest()
    render(FigureSpec(kind="inr_cdf", inputs=(src,), output=tmp_path / "x.svg"))
    assert hashlib.sha256(src.read_bytes()).hexdigest() == before


def test_tdd_curve_is_flat_at_half(tmp_path):
    src = sweep_snr_fixture(tmp_path / "sweep.csv")
    _, series = build_figure(
        FigureSpec(kind="kappa_vs_snr", inputs=(src,), output=tmp_path / "x.svg")
    )
    xs, ys = series["TDD"]
    assert len(xs) == 2  # one point per transmit SNR
    assert np.all(ys == 0.5)


def test_inr_cdf_is_monotone_and_reaches_one(tmp_path):
    src = results_fixture(tmp_path / "results.csv")
    _, series = build_figure(
        FigureSpec(kind="inr_cdf", inputs=(src,), output=tmp_path / "x.svg")
    )
    for xs, ys in series.values():
        assert np.all(np.diff(xs) >= 0)
        assert np.all(np.diff(ys) >= 0)
        assert ys[-1] == 1.0
    assert set(series) == {"FD-CONV", "FD-STEER"}


def test_heatmap_cells_match_fixture(tmp_path):
    values = (0.31, 0.52, 0.63, 0.84)
    src = sweep_snr_fixture(tmp_path / "sweep.csv", kappa_fd_steer=values)
    _, series = build_figure(
        FigureSpec(kind="kappa_heatmap", inputs=(src,), output=tmp_path / "x.svg")
    )
    tx_axis, rx_axis, grid = series["kappa_fd_steer"]
    assert grid.shape == (2, 2)
    assert grid[0, 0] == 0.31 and grid[0, 1] == 0.52
    assert grid[1, 0] == 0.63 and grid[1, 1] == 0.84


def test_kappa_vs_target_places_no_target_leftmost(tmp_path):
    src = sweep_target_fixture(tmp_path / "sweep.csv")
    _, series = build_figure(
        FigureSpec(kind="kappa_vs_target", inputs=(src,), output=tmp_path / "x.svg")
    )
    xs, ys = series["FD-STEER"]
    assert xs[0] == -12.0  # -inf drawn 5 dB left of the smallest finite target
    assert list(ys) == [0.71, 0.67, 0.62]


def test_multiple_inputs_overlay_cdfs(tmp_path):
    a = results_fixture(tmp_path / "a.csv")
    b = results_fixture(tmp_path / "b.csv")
    _, series = build_figure(
        FigureSpec(kind="inr_cdf", inputs=(a, b), output=tmp_path / "x.svg")
    )
    assert len(series) == 4
    assert any("(a)" in label for label in series)


def test_measurement_fraction_in_unit_interval(tmp_path):
    src = results_fixture(tmp_path / "results.csv")
    _, series = build_figure(
        FigureSpec(kind="measurement_fraction_cdf", inputs=(src,), output=tmp_path / "x.svg")
    )
    ((xs, ys),) = series.values()
    assert xs.min() > 0 and xs.max() == 1.0


def test_missing_column_is_named(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("strategy,foo\nTDD,1\n", encoding="utf-8")
    with pytest.raises(ColumnError, match="inr_rx_db"):
        render(FigureSpec(kind="inr_cdf", inputs=(bad,), output=tmp_path / "x.svg"))


def test_bad_kind_and_empty_inputs_rejected(tmp_path):
    with pytest.raises(PlotError):
        FigureSpec(kind="pie", inputs=(tmp_path / "x.csv",), output=tmp_path / "x.svg")
    with pytest.raises(PlotError):
        FigureSpec(kind="inr_cdf", inputs=(), output=tmp_path / "x.svg")
