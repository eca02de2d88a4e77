"""Monte Carlo harness: random user drops, alignment, beam steering, rates.

Each drop samples the transmit-link and receive-link user directions from
its own RNG substream (derived from the scenario seed and the drop index),
so results are deterministic and independent of worker count, and sweeps
reuse identical drops (common random numbers).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .alignment import AlignmentResult, align
from .array import Codebook, SteeringDirection, UpaGeometry, conjugate_beam
from .channels import los_channel
from .errors import ConfigurationError
from .linkmetrics import LinkBudget, LinkRates, db_to_linear, snr_with_beam, strategy_rates
from .steer import SteerConfig, SteerSolution, solve_steer_incremental

MODES = ("DL-DL", "UL-UL")

RESULTS_HEADER = (
    "drop,mode,strategy,theta_u_tx,phi_u_tx,theta_u_rx,phi_u_rx,"
    "snr_tx_db,snr_rx_db,inr_rx_db,r_tx,r_rx,r_sum,kappa_sum,measurements"
)


@dataclass(frozen=True)
class Scenario:
    drop_region_az: tuple[float, float]
    drop_region_el: tuple[float, float]
    budget: LinkBudget
    steer_config: SteerConfig
    n_drops: int
    seed: int
    mode: str = "DL-DL"

    def __post_init__(self):
        if self.n_drops < 1:
            raise ConfigurationError("n_drops must be >= 1")
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}")


@dataclass(frozen=True)
class Platform:
    """The simulated transceiver: panel geometries, codebooks, and SI oracle."""

    tx_geometry: UpaGeometry
    rx_geometry: UpaGeometry
    codebook_tx: Codebook
    codebook_rx: Codebook
    oracle: object


@dataclass(frozen=True)
class DropResult:
    drop: int
    user_dirs: tuple[SteeringDirection, SteeringDirection]
    nominal_tx: AlignmentResult
    nominal_rx: AlignmentResult
    inr_nom_db: float
    steer: SteerSolution
    snr_tx_sel: float
    snr_rx_sel: float
    rates: dict[str, LinkRates]


def _sample_drop(scenario: Scenario, drop: int) -> tuple[SteeringDirection, SteeringDirection]:
    rng = np.random.default_rng([scenario.seed, drop])
    az_lo, az_hi = scenario.drop_region_az
    el_lo, el_hi = scenario.drop_region_el
    u_tx = SteeringDirection(rng.uniform(az_lo, az_hi), rng.uniform(el_lo, el_hi))
    u_rx = SteeringDirection(rng.uniform(az_lo, az_hi), rng.uniform(el_lo, el_hi))
    return u_tx, u_rx


def _run_drop(scenario: Scenario, platform: Platform, drop: int,
              lookup: dict | None = None) -> DropResult:
    budget = scenario.budget
    u_tx, u_rx = _sample_drop(scenario, drop)
    h_tx = los_channel(platform.tx_geometry, u_tx)
    h_rx = los_channel(platform.rx_geometry, u_rx)
    nom_tx = align(platform.codebook_tx, h_tx, budget.snrbar_tx_db)
    nom_rx = align(platform.codebook_rx, h_rx, budget.snrbar_rx_db)
    inr_nom_db = platform.oracle.query_inr_db(nom_tx.direction, nom_rx.direction)

    if lookup is not None:
        entry = lookup[(nom_tx.beam_index, nom_rx.beam_index)]
        sol = SteerSolution(
            d_tx_star=entry["d_tx_star"],
            d_rx_star=entry["d_rx_star"],
            inr_achieved_db=entry["inr_achieved_db"],
            deviation=(
                max(
                    abs(entry["d_tx_star"].azimuth_deg - nom_tx.direction.azimuth_deg),
                    abs(entry["d_rx_star"].azimuth_deg - nom_rx.direction.azimuth_deg),
                ),
                max(
                    abs(entry["d_tx_star"].elevation_deg - nom_tx.direction.elevation_deg),
                    abs(entry["d_rx_star"].elevation_deg - nom_rx.direction.elevation_deg),
                ),
            ),
            measurements_used=entry["measurements_used"],
            target_met=entry["target_met"],
        )
    else:
        sol = solve_steer_incremental(
            platform.oracle, nom_tx.direction, nom_rx.direction, scenario.steer_config
        )

    snr_tx_sel = snr_with_beam(
        budget.snrbar_tx_db, h_tx, conjugate_beam(platform.tx_geometry, sol.d_tx_star)
    )
    snr_rx_sel = snr_with_beam(
        budget.snrbar_rx_db, h_rx, conjugate_beam(platform.rx_geometry, sol.d_rx_star)
    )

    inr_nom = db_to_linear(inr_nom_db)
    inr_steer = db_to_linear(sol.inr_achieved_db)
    rates = {
        "TDD": strategy_rates(
            budget, nom_tx.snr_nom, nom_rx.snr_nom,
            nom_tx.snr_nom, nom_rx.snr_nom, 0.0, "TDD",
        ),
        "TDD-PC": strategy_rates(
            budget, nom_tx.snr_nom, nom_rx.snr_nom,
            nom_tx.snr_nom, nom_rx.snr_nom, 0.0, "TDD-PC",
        ),
        "FD-CONV": strategy_rates(
            budget, nom_tx.snr_nom, nom_rx.snr_nom,
            nom_tx.snr_nom, nom_rx.snr_nom, inr_nom, "FD-CONV",
        ),
        "FD-STEER": strategy_rates(
            budget, nom_tx.snr_nom, nom_rx.snr_nom,
            snr_tx_sel, snr_rx_sel, inr_steer, "FD-STEER",
        ),
    }
    return DropResult(
        drop=drop,
        user_dirs=(u_tx, u_rx),
        nominal_tx=nom_tx,
        nominal_rx=nom_rx,
        inr_nom_db=inr_nom_db,
        steer=sol,
        snr_tx_sel=snr_tx_sel,
        snr_rx_sel=snr_rx_sel,
        rates=rates,
    )


def run_scenario(
    scenario: Scenario,
    platform: Platform,
    threads: int = 0,
    lookup: dict | None = None,
) -> list[DropResult]:
    """Simulate all drops; results are returned in drop-index order."""
    drops = range(scenario.n_drops)
    if threads and threads != 1:
        workers = None if threads == 0 else threads
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda d: _run_drop(scenario, platform, d, lookup), drops))
    return [_run_drop(scenario, platform, d, lookup) for d in drops]


def _mean_kappa(results: list[DropResult]) -> dict[str, float]:
    return {
        s: float(np.mean([r.rates[s].kappa_sum for r in results]))
        for s in ("TDD", "TDD-PC", "FD-CONV", "FD-STEER")
    }


def sweep_target(
    scenario: Scenario, platform: Platform, targets_db: list[float], threads: int = 0
) -> list[dict]:
    """Mean kappa per strategy for each INR target; drops are shared."""
    rows = []
    for target_db in targets_db:
        cfg = replace(scenario.steer_config, inr_target_db=target_db)
        results = run_scenario(replace(scenario, steer_config=cfg), platform, threads)
        rows.append({"target_db": target_db, **_mean_kappa(results)})
    return rows


def sweep_neighborhood(
    scenario: Scenario, platform: Platform, specs, threads: int = 0
) -> list[dict]:
    """Mean kappa per strategy for each neighborhood spec; drops are shared."""
    rows = []
    for spec in specs:
        cfg = replace(scenario.steer_config, spec=spec)
        results = run_scenario(replace(scenario, steer_config=cfg), platform, threads)
        rows.append(
            {
                "delta_theta_deg": spec.delta_theta_deg,
                "delta_phi_deg": spec.delta_phi_deg,
                "res_theta_deg": spec.res_theta_deg,
                "res_phi_deg": spec.res_phi_deg,
                **_mean_kappa(results),
            }
        )
    return rows


def snr_grid_sweep(
    scenario: Scenario,
    platform: Platform,
    snr_tx_db_list: list[float],
    snr_rx_db_list: list[float],
    threads: int = 0,
) -> dict[str, np.ndarray]:
    """Mean kappa matrices indexed [rx, tx] over an SNR grid; drops shared."""
    out = {
        s: np.zeros((len(snr_rx_db_list), len(snr_tx_db_list)))
        for s in ("TDD", "TDD-PC", "FD-CONV", "FD-STEER")
    }
    for irx, snr_rx_db in enumerate(snr_rx_db_list):
        for itx, snr_tx_db in enumerate(snr_tx_db_list):
            budget = replace(
                scenario.budget, snrbar_tx_db=snr_tx_db, snrbar_rx_db=snr_rx_db
            )
            results = run_scenario(replace(scenario, budget=budget), platform, threads)
            for s, mean in _mean_kappa(results).items():
                out[s][irx, itx] = mean
    return out


def empirical_cdf(values) -> list[tuple[float, float]]:
    """Sorted (value, cumulative fraction) pairs; duplicates collapsed."""
    data = sorted(values)
    n = len(data)
    out: list[tuple[float, float]] = []
    for i, v in enumerate(data):
        if i + 1 < n and data[i + 1] == v:
            continue
        out.append((v, (i + 1) / n))
    return out


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_results_csv(results: list[DropResult], scenario: Scenario, path) -> None:
    """One row per drop per strategy, schema fixed by RESULTS_HEADER."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(RESULTS_HEADER + "\n")
        for r in results:
            u_tx, u_rx = r.user_dirs
            snr_tx_nom_db = (
                -math.inf if r.nominal_tx.snr_nom == 0 else 10 * math.log10(r.nominal_tx.snr_nom)
            )
            snr_rx_nom_db = (
                -math.inf if r.nominal_rx.snr_nom == 0 else 10 * math.log10(r.nominal_rx.snr_nom)
            )
            snr_tx_sel_db = -math.inf if r.snr_tx_sel == 0 else 10 * math.log10(r.snr_tx_sel)
            snr_rx_sel_db = -math.inf if r.snr_rx_sel == 0 else 10 * math.log10(r.snr_rx_sel)
            per_strategy = {
                "TDD": (snr_tx_nom_db, snr_rx_nom_db, -math.inf, 0),
                "TDD-PC": (snr_tx_nom_db, snr_rx_nom_db, -math.inf, 0),
                "FD-CONV": (snr_tx_nom_db, snr_rx_nom_db, r.inr_nom_db, 0),
                "FD-STEER": (
                    snr_tx_sel_db,
                    snr_rx_sel_db,
                    r.steer.inr_achieved_db,
                    r.steer.measurements_used,
                ),
            }
            for strategy, (stx, srx, inr, meas) in per_strategy.items():
                rates = r.rates[strategy]
                fh.write(
                    ",".join(
                        [
                            str(r.drop),
                            scenario.mode,
                            strategy,
                            _fmt(u_tx.azimuth_deg),
                            _fmt(u_tx.elevation_deg),
                            _fmt(u_rx.azimuth_deg),
                            _fmt(u_rx.elevation_deg),
                            _fmt(stx),
                            _fmt(srx),
                            _fmt(inr),
                            _fmt(rates.r_tx),
                            _fmt(rates.r_rx),
                            _fmt(rates.r_sum),
                            _fmt(rates.kappa_sum),
                            str(meas),
                        ]
                    )
                    + "\n"
                )
