"""Command line front end.

Diagnostics go to stderr (level controlled by the STEER_SIM_LOG environment
variable); data goes to CSV files under --out.  Runs are deterministic: the
same config, seed, and thread count produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from .config import RunConfig, load_config
from .errors import SteersimError
from .presets import build_platform, build_scenario
from .si_oracle import export_grid
from .simharness import (
    Platform,
    Scenario,
    _mean_kappa,
    run_scenario,
    snr_grid_sweep,
    sweep_neighborhood,
    sweep_target,
    write_results_csv,
)
from .steer import NeighborhoodSpec, load_lookup, precompute_lookup, save_lookup

log = logging.getLogger("steersim")

_KAPPA_COLUMNS = "kappa_tdd,kappa_tdd_pc,kappa_fd_conv,kappa_fd_steer"
_STRATEGY_ORDER = ("TDD", "TDD-PC", "FD-CONV", "FD-STEER")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _setup_logging() -> None:
    level_name = os.environ.get("STEER_SIM_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="INI-style config file")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="override scenario seed")
    parser.add_argument(
        "--threads", type=int, default=1, help="worker threads (0 = all cores)"
    )
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config value, e.g. --set steer.inr_target_db=-3",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steersim",
        description="Full-duplex mmWave beam selection link simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the Monte Carlo scenario")
    _add_common(p)
    p.add_argument(
        "--lookup", type=Path, default=None, help="precomputed beam-pair lookup CSV"
    )

    for name, help_text in (
        ("sweep-target", "mean kappa versus interference target"),
        ("sweep-neighborhood", "mean kappa versus search extent"),
        ("sweep-snr", "mean kappa over an SNR grid"),
        ("grid", "export the interference grid around every codebook pair"),
        ("precompute", "solve beam selection for every codebook index pair"),
    ):
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def _prepare(args) -> tuple[RunConfig, Platform, Scenario, int]:
    config = load_config(args.config, args.overrides)
    if args.seed is not None:
        config.scenario_seed = args.seed
    threads = args.threads if args.threads > 0 else (os.cpu_count() or 1)
    t0 = time.perf_counter()
    platform = build_platform(config)
    log.info("platform built in %.2fs", time.perf_counter() - t0)
    scenario = build_scenario(config, platform)
    args.out.mkdir(parents=True, exist_ok=True)
    return config, platform, scenario, threads


def _kappa_cells(row: dict) -> list[str]:
    return [_fmt(row[s]) for s in _STRATEGY_ORDER]


def cmd_simulate(args) -> int:
    config, platform, scenario, threads = _prepare(args)
    lookup = load_lookup(args.lookup) if args.lookup is not None else None
    t0 = time.perf_counter()
    results = run_scenario(scenario, platform, threads=threads, lookup=lookup)
    log.info("%d drops in %.2fs", len(results), time.perf_counter() - t0)
    write_results_csv(results, scenario, args.out / "results.csv")
    means = _mean_kappa(results)
    with open(args.out / "summary.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("strategy,mean_kappa_sum,mean_r_sum\n")
        for s in _STRATEGY_ORDER:
            mean_r = sum(r.rates[s].r_sum for r in results) / len(results)
            fh.write(f"{s},{_fmt(means[s])},{_fmt(mean_r)}\n")
    return 0


def cmd_sweep_target(args) -> int:
    config, platform, scenario, threads = _prepare(args)
    rows = sweep_target(scenario, platform, list(config.sweep_targets_db), threads)
    with open(args.out / "sweep_target.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"target_db,{_KAPPA_COLUMNS}\n")
        for row in rows:
            fh.write(",".join([_fmt(row["target_db"])] + _kappa_cells(row)) + "\n")
    return 0


def cmd_sweep_neighborhood(args) -> int:
    config, platform, scenario, threads = _prepare(args)
    specs = []
    for delta in config.sweep_delta_deg:
        specs.append(
            NeighborhoodSpec(
                delta_theta_deg=delta,
                delta_phi_deg=delta,
                res_theta_deg=min(config.steer_res_theta_deg, delta) or config.steer_res_theta_deg,
                res_phi_deg=min(config.steer_res_phi_deg, delta) or config.steer_res_phi_deg,
            )
        )
    rows = sweep_neighborhood(scenario, platform, specs, threads)
    path = args.out / "sweep_neighborhood.csv"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"delta_theta_deg,delta_phi_deg,res_theta_deg,res_phi_deg,{_KAPPA_COLUMNS}\n")
        for row in rows:
            cells = [
                _fmt(row[k])
                for k in ("delta_theta_deg", "delta_phi_deg", "res_theta_deg", "res_phi_deg")
            ]
            fh.write(",".join(cells + _kappa_cells(row)) + "\n")
    return 0


def cmd_sweep_snr(args) -> int:
    config, platform, scenario, threads = _prepare(args)
    tx_list = list(config.sweep_snr_tx_db)
    rx_list = list(config.sweep_snr_rx_db)
    grids = snr_grid_sweep(scenario, platform, tx_list, rx_list, threads)
    with open(args.out / "sweep_snr.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"snr_tx_db,snr_rx_db,{_KAPPA_COLUMNS}\n")
        for irx, snr_rx in enumerate(rx_list):
            for itx, snr_tx in enumerate(tx_list):
                cells = [_fmt(grids[s][irx, itx]) for s in _STRATEGY_ORDER]
                fh.write(",".join([_fmt(snr_tx), _fmt(snr_rx)] + cells) + "\n")
    return 0


def _neighborhood_pairs(platform: Platform, scenario: Scenario):
    """Every distinct direction pair any run of the solver could query."""
    from .steer import neighborhood_offsets

    offsets = neighborhood_offsets(scenario.steer_config.spec)

    def link_dirs(codebook):
        seen, out = set(), []
        for d in codebook.directions:
            for off in offsets:
                shifted = d.shifted(*off)
                if shifted not in seen:
                    seen.add(shifted)
                    out.append(shifted)
        return out

    tx_dirs = link_dirs(platform.codebook_tx)
    rx_dirs = link_dirs(platform.codebook_rx)
    for d_tx in tx_dirs:
        for d_rx in rx_dirs:
            yield d_tx, d_rx


def cmd_grid(args) -> int:
    config, platform, scenario, _ = _prepare(args)
    spec = scenario.steer_config.spec
    export_grid(
        platform.oracle,
        _neighborhood_pairs(platform, scenario),
        args.out / "inr_grid.csv",
        resolution_deg=(spec.res_theta_deg, spec.res_phi_deg),
        metadata={"si_ref_inr_db": _fmt(platform.oracle.si_ref_inr_db)},
    )
    return 0


def cmd_precompute(args) -> int:
    config, platform, scenario, _ = _prepare(args)
    t0 = time.perf_counter()
    table = precompute_lookup(
        platform.oracle, platform.codebook_tx, platform.codebook_rx, scenario.steer_config
    )
    log.info("%d index pairs precomputed in %.2fs", len(table), time.perf_counter() - t0)
    save_lookup(table, args.out / "lookup.csv")
    return 0


_COMMANDS = {
    "simulate": cmd_simulate,
    "sweep-target": cmd_sweep_target,
    "sweep-neighborhood": cmd_sweep_neighborhood,
    "sweep-snr": cmd_sweep_snr,
    "grid": cmd_grid,
    "precompute": cmd_precompute,
}


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SteersimError as exc:
        print(f"steersim: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"steersim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
