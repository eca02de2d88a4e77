"""Figure builders for the simulator's CSV outputs.

Each figure kind consumes one or more CSVs written by the steersim CLI
(results.csv, sweep_*.csv, lookup.csv) and produces a single image. The
output format follows the file extension. Rendering is deterministic:
the same inputs produce byte-identical SVG.

Inputs are never modified; everything is read into memory up front.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "steerplots"

from matplotlib import pyplot as plt  # noqa: E402  (backend must be set first)

STRATEGIES = ("TDD", "TDD-PC", "FD-CONV", "FD-STEER")
KAPPA_COLUMNS = {
    "TDD": "kappa_tdd",
    "TDD-PC": "kappa_tdd_pc",
    "FD-CONV": "kappa_fd_conv",
    "FD-STEER": "kappa_fd_steer",
}

FIGURE_KINDS = (
    "inr_cdf",
    "sinr_gap_cdf",
    "kappa_vs_snr",
    "kappa_vs_target",
    "kappa_heatmap",
    "boundary_contour",
    "measurement_fraction_cdf",
)


class PlotError(ValueError):
    """Bad figure request or malformed input."""


class ColumnError(PlotError):
    """A required CSV column is missing."""

    def __init__(self, path, columns):
        self.columns = tuple(columns)
        super().__init__(f"{path}: missing required column(s): {', '.join(columns)}")


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[Path, ...]
    output: Path

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise PlotError(f"unknown figure kind {self.kind!r}; expected one of {FIGURE_KINDS}")
        if not self.inputs:
            raise PlotError("at least one input CSV is required")


@dataclass
class Table:
    """A parsed CSV: column-name -> list of raw strings."""

    path: Path
    columns: dict[str, list[str]] = field(default_factory=dict)

    def require(self, *names):
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise ColumnError(self.path, missing)

    def floats(self, name) -> np.ndarray:
        return np.array([float(v) for v in self.columns[name]])

    def strings(self, name) -> list[str]:
        return self.columns[name]

    def __len__(self):
        return len(next(iter(self.columns.values()), []))


def read_table(path) -> Table:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        rows = [r for r in csv.reader(line for line in fh if not line.startswith("#"))]
    if not rows:
        raise PlotError(f"{path}: empty file")
    header, data = rows[0], rows[1:]
    columns = {name: [row[i] for row in data] for i, name in enumerate(header)}
    return Table(path=path, columns=columns)


def ecdf(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    xs = np.sort(np.asarray(values, dtype=float))
    ys = np.arange(1, len(xs) + 1) / len(xs)
    return xs, ys


def _label(path: Path, base: str, multiple: bool) -> str:
    return f"{base} ({path.stem})" if multiple else base


def _strategy_rows(table: Table, strategy: str) -> np.ndarray:
    return np.array([s == strategy for s in table.strings("strategy")])


# --- per-kind builders ----------------------------------------------------
# Each returns {curve label: (x array, y array)} and draws onto ax; the
# series dict is what the tests inspect.

def _build_inr_cdf(ax, tables):
    series = {}
    many = len(tables) > 1
    for table in tables:
        table.require("strategy", "inr_rx_db")
        inr = table.floats("inr_rx_db")
        for strategy in ("FD-CONV", "FD-STEER"):
            mask = _strategy_rows(table, strategy)
            if not mask.any():
                continue
            xs, ys = ecdf(inr[mask])
            label = _label(table.path, strategy, many)
            series[label] = (xs, ys)
            ax.step(xs, ys, where="post", label=label)
    ax.set_xlabel("receive-link INR (dB)")
    ax.set_ylabel("CDF (fraction)")
    return series


def _build_sinr_gap_cdf(ax, tables):
    # per-drop improvement in effective receive-link SINR, steered vs
    # conventional full duplex
    series = {}
    many = len(tables) > 1
    for table in tables:
        table.require("drop", "strategy", "snr_rx_db", "inr_rx_db")
        snr = table.floats("snr_rx_db")
        inr = table.floats("inr_rx_db")
        sinr_db = snr - 10.0 * np.log10(1.0 + 10.0 ** (inr / 10.0))
        drops = table.strings("drop")
        by_drop = {}
        for k, strategy in enumerate(table.strings("strategy")):
            if strategy in ("FD-CONV", "FD-STEER"):
                by_drop.setdefault(drops[k], {})[strategy] = sinr_db[k]
        gaps = [
            v["FD-STEER"] - v["FD-CONV"]
            for v in by_drop.values()
            if "FD-STEER" in v and "FD-CONV" in v
        ]
        if not gaps:
            raise PlotError(f"{table.path}: no drops with both full-duplex strategies")
        xs, ys = ecdf(np.array(gaps))
        label = _label(table.path, "SINR gain", many)
        series[label] = (xs, ys)
        ax.step(xs, ys, where="post", label=label)
    ax.set_xlabel("receive-link SINR improvement (dB)")
    ax.set_ylabel("CDF (fraction)")
    return series


def _kappa_curves(ax, table, x_column, x_label):
    table.require(x_column, *KAPPA_COLUMNS.values())
    xs_raw = table.floats(x_column)
    finite = xs_raw[np.isfinite(xs_raw)]
    # -inf (no target) is drawn at a sentinel position left of the data
    sentinel = (finite.min() - 5.0) if finite.size else -5.0
    xs_plot = np.where(np.isfinite(xs_raw), xs_raw, sentinel)
    order = np.argsort(xs_plot, kind="stable")
    series = {}
    for strategy, column in KAPPA_COLUMNS.items():
        ys = table.floats(column)
        grouped_x, grouped_y = [], []
        for x in dict.fromkeys(xs_plot[order]):
            mask = xs_plot == x
            grouped_x.append(x)
            grouped_y.append(float(ys[mask].mean()))
        series[strategy] = (np.array(grouped_x), np.array(grouped_y))
        ax.plot(grouped_x, grouped_y, marker="o", label=strategy)
    ax.set_xlabel(x_label)
    ax.set_ylabel("fraction of codebook capacity")
    ax.set_ylim(0.0, 1.05)
    return series


def _build_kappa_vs_snr(ax, tables):
    return _kappa_curves(ax, tables[0], "snr_tx_db", "transmit-link SNR (dB)")


def _build_kappa_vs_target(ax, tables):
    return _kappa_curves(ax, tables[0], "target_db", "INR target (dB)")


def _snr_matrix(table, value_column):
    table.require("snr_tx_db", "snr_rx_db", value_column)
    tx = table.floats("snr_tx_db")
    rx = table.floats("snr_rx_db")
    val = table.floats(value_column)
    tx_axis = np.array(sorted(set(tx)))
    rx_axis = np.array(sorted(set(rx)))
    grid = np.full((len(rx_axis), len(tx_axis)), math.nan)
    for t, r, v in zip(tx, rx, val):
        grid[np.searchsorted(rx_axis, r), np.searchsorted(tx_axis, t)] = v
    return tx_axis, rx_axis, grid


def _build_kappa_heatmap(ax, tables):
    tx_axis, rx_axis, grid = _snr_matrix(tables[0], "kappa_fd_steer")
    mesh = ax.pcolormesh(tx_axis, rx_axis, grid, shading="nearest", vmin=0.0, vmax=1.0)
    ax.figure.colorbar(mesh, ax=ax, label="fraction of codebook capacity")
    ax.set_xlabel("transmit-link SNR (dB)")
    ax.set_ylabel("receive-link SNR (dB)")
    return {"kappa_fd_steer": (tx_axis, rx_axis, grid)}


def _build_boundary_contour(ax, tables):
    # shade the operating region where full duplex with steering does not
    # beat the half-duplex baseline (kappa <= 0.5)
    tx_axis, rx_axis, grid = _snr_matrix(tables[0], "kappa_fd_steer")
    if grid.shape[0] > 1 and grid.shape[1] > 1:
        ax.contourf(tx_axis, rx_axis, grid, levels=[-1.0, 0.5], colors=["0.8"])
        ax.contour(tx_axis, rx_axis, grid, levels=[0.5], colors=["black"])
    ax.set_xlabel("transmit-link SNR (dB)")
    ax.set_ylabel("receive-link SNR (dB)")
    ax.set_title("shaded: fraction of capacity <= 0.5")
    return {"kappa_fd_steer": (tx_axis, rx_axis, grid)}


def _build_measurement_fraction_cdf(ax, tables):
    # fraction of the search neighborhood actually measured; the largest
    # count in the file is taken as the full neighborhood size
    series = {}
    many = len(tables) > 1
    for table in tables:
        table.require("measurements")
        counts = table.floats("measurements")
        if "strategy" in table.columns:
            counts = counts[_strategy_rows(table, "FD-STEER")]
        if counts.size == 0 or counts.max() <= 0:
            raise PlotError(f"{table.path}: no usable measurement counts")
        xs, ys = ecdf(counts / counts.max())
        label = _label(table.path, "measured fraction", many)
        series[label] = (xs, ys)
        ax.step(xs, ys, where="post", label=label)
    ax.set_xlabel("fraction of neighborhood measured")
    ax.set_ylabel("CDF (fraction)")
    return series


_BUILDERS = {
    "inr_cdf": _build_inr_cdf,
    "sinr_gap_cdf": _build_sinr_gap_cdf,
    "kappa_vs_snr": _build_kappa_vs_snr,
    "kappa_vs_target": _build_kappa_vs_target,
    "kappa_heatmap": _build_kappa_heatmap,
    "boundary_contour": _build_boundary_contour,
    "measurement_fraction_cdf": _build_measurement_fraction_cdf,
}


def build_figure(spec: FigureSpec):
    """Build the figure without writing it; returns (figure, series dict)."""
    tables = [read_table(p) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=(5.0, 3.5), constrained_layout=True)
    series = _BUILDERS[spec.kind](ax, tables)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize="small")
    return fig, series


def render(spec: FigureSpec):
    """Render the figure to spec.output; format follows the extension."""
    fig, series = build_figure(spec)
    try:
        save_kwargs = {}
        if str(spec.output).lower().endswith(".svg"):
            # drop the timestamp so identical inputs give identical bytes
            save_kwargs["metadata"] = {"Date": None}
        fig.savefig(spec.output, **save_kwargs)
    finally:
        plt.close(fig)
    return series
