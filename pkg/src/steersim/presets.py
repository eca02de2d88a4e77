"""Builders turning a RunConfig into a concrete platform and scenario.

The defaults reproduce the reference 28 GHz setup: two 16x16 half-wavelength
panels 0.3 m apart with normals split 120 deg in azimuth, a 105-beam
codebook per panel, and a spherical-wave coupling channel calibrated so the
median INR over all codebook beam pairs is 20 dB.
"""

from __future__ import annotations

import math

from .array import Codebook, UpaGeometry, build_codebook, codebook_preset
from .channels import synthesize_si_channel
from .config import RunConfig
from .errors import ConfigurationError
from .linkmetrics import LinkBudget
from .si_oracle import SyntheticSiOracle, calibrate_reference
from .simharness import Platform, Scenario
from .steer import NeighborhoodSpec, SteerConfig


def build_geometries(config: RunConfig) -> tuple[UpaGeometry, UpaGeometry]:
    half_sep = config.array_panel_separation_m / 2.0
    half_split = config.array_panel_normal_split_deg / 2.0
    common = dict(
        rows=config.array_rows,
        cols=config.array_cols,
        element_spacing_wavelengths=config.array_spacing_wavelengths,
    )
    tx = UpaGeometry(
        panel_center_m=(-half_sep, 0.0, 0.0),
        panel_normal_azimuth_deg=-half_split,
        **common,
    )
    rx = UpaGeometry(
        panel_center_m=(half_sep, 0.0, 0.0),
        panel_normal_azimuth_deg=half_split,
        **common,
    )
    return tx, rx


def build_codebooks(config: RunConfig, tx: UpaGeometry, rx: UpaGeometry) -> tuple[Codebook, Codebook]:
    if config.codebook_preset and config.codebook_preset != "custom":
        return codebook_preset(config.codebook_preset, tx), codebook_preset(
            config.codebook_preset, rx
        )
    az = (config.codebook_az_lo_deg, config.codebook_az_hi_deg)
    el = (config.codebook_el_lo_deg, config.codebook_el_hi_deg)
    spacing = config.codebook_spacing_deg
    return build_codebook(tx, az, el, spacing), build_codebook(rx, az, el, spacing)


def build_platform(config: RunConfig) -> Platform:
    """Geometries, codebooks, and a calibrated synthetic oracle."""
    tx, rx = build_geometries(config)
    cb_tx, cb_rx = build_codebooks(config, tx, rx)
    si = synthesize_si_channel(
        tx, rx, config.carrier_wavelength_m, config.oracle_model, config.oracle_seed
    )
    clip = config.oracle_clip_ceiling_db
    oracle = SyntheticSiOracle(
        tx,
        rx,
        si,
        noise_sigma_db=config.oracle_noise_sigma_db,
        clip_ceiling_db=None if math.isinf(clip) else clip,
        seed=config.oracle_seed,
    )
    if config.budget_si_ref_inr_db == "auto":
        oracle.si_ref_inr_db = calibrate_reference(
            oracle, cb_tx, cb_rx, config.oracle_target_median_inr_db
        )
    else:
        oracle.si_ref_inr_db = float(config.budget_si_ref_inr_db)
    return Platform(
        tx_geometry=tx,
        rx_geometry=rx,
        codebook_tx=cb_tx,
        codebook_rx=cb_rx,
        oracle=oracle,
    )


def build_budget(config: RunConfig, platform: Platform) -> LinkBudget:
    oracle = platform.oracle
    si_ref = getattr(oracle, "si_ref_inr_db", 0.0)
    return LinkBudget(
        snrbar_tx_db=config.budget_snrbar_tx_db,
        snrbar_rx_db=config.budget_snrbar_rx_db,
        inr_tx_db=config.budget_inr_tx_db,
        si_ref_inr_db=si_ref,
    )


def build_scenario(config: RunConfig, platform: Platform) -> Scenario:
    spec = NeighborhoodSpec(
        delta_theta_deg=config.steer_delta_theta_deg,
        delta_phi_deg=config.steer_delta_phi_deg,
        res_theta_deg=config.steer_res_theta_deg,
        res_phi_deg=config.steer_res_phi_deg,
    )
    az = (config.scenario_drop_az_lo_deg, config.scenario_drop_az_hi_deg)
    el = (config.scenario_drop_el_lo_deg, config.scenario_drop_el_hi_deg)
    if az[0] > az[1] or el[0] > el[1]:
        raise ConfigurationError("drop region bounds are inverted")
    return Scenario(
        drop_region_az=az,
        drop_region_el=el,
        budget=build_budget(config, platform),
        steer_config=SteerConfig(spec=spec, inr_target_db=config.steer_inr_target_db),
        n_drops=config.scenario_n_drops,
        seed=config.scenario_seed,
        mode=config.scenario_mode,
    )


def default_platform() -> Platform:
    return build_platform(RunConfig())


def default_scenario(platform: Platform | None = None) -> tuple[Scenario, Platform]:
    platform = platform or default_platform()
    return build_scenario(RunConfig(), platform), platform
