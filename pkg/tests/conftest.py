import time

import pytest

from steersim.config import RunConfig
from steersim.presets import build_platform, build_scenario
from steersim.simharness import run_scenario


def tiny_config(**overrides) -> RunConfig:
    """A 4x4-panel, 9-beam setup small enough for fast end-to-end tests."""
    config = RunConfig(
        array_rows=4,
        array_cols=4,
        codebook_preset="custom",
        codebook_az_lo_deg=-8.0,
        codebook_az_hi_deg=8.0,
        codebook_el_lo_deg=-8.0,
        codebook_el_hi_deg=8.0,
        codebook_spacing_deg=8.0,
        scenario_drop_az_lo_deg=-10.0,
        scenario_drop_az_hi_deg=10.0,
        scenario_drop_el_lo_deg=-10.0,
        scenario_drop_el_hi_deg=10.0,
        steer_delta_theta_deg=1.0,
        steer_delta_phi_deg=1.0,
        scenario_n_drops=20,
    )
    for key, value in overrides.items():
        setattr(config, key, value)
    return config


@pytest.fixture(scope="session")
def default_run():
    """The full default scenario: 10000 drops on the calibrated 28 GHz preset."""
    config = RunConfig()
    platform = build_platform(config)
    scenario = build_scenario(config, platform)
    t0 = time.perf_counter()
    results = run_scenario(scenario, platform)
    elapsed = time.perf_counter() - t0
    return scenario, platform, results, elapsed
