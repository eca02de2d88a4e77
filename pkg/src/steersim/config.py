"""Run configuration: a flat, typed document parsed from an INI-style file.

Every field has the default-scenario value, so an empty (or absent) config
is runnable.  Unknown sections or keys are errors, reported with their line
number.  Angles are degrees; powers and interference levels are dB ("-inf"
is accepted where noted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .errors import ConfigurationError


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigurationError(f"expected a number, got {text!r}") from None


def _parse_db(text: str) -> float:
    value = _parse_float(text)
    if value == math.inf or math.isnan(value):
        raise ConfigurationError(f"dB value must be finite or -inf, got {text!r}")
    return value


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigurationError(f"expected an integer, got {text!r}") from None


def _parse_str(text: str) -> str:
    return text


def _parse_float_list(text: str) -> tuple[float, ...]:
    if not text.strip():
        return ()
    return tuple(_parse_db(part.strip()) for part in text.split(","))


@dataclass
class RunConfig:
    # [array]
    array_rows: int = 16
    array_cols: int = 16
    array_spacing_wavelengths: float = 0.5
    array_carrier_ghz: float = 28.0
    array_panel_separation_m: float = 0.3
    array_panel_normal_split_deg: float = 120.0
    # [codebook]
    codebook_preset: str = "paper-28ghz"
    codebook_az_lo_deg: float = -56.0
    codebook_az_hi_deg: float = 56.0
    codebook_el_lo_deg: float = -24.0
    codebook_el_hi_deg: float = 24.0
    codebook_spacing_deg: float = 8.0
    # [oracle]
    oracle_model: str = "spherical-wave"
    oracle_seed: int = 0
    oracle_target_median_inr_db: float = 20.0
    oracle_noise_sigma_db: float = 0.0
    oracle_clip_ceiling_db: float = math.inf  # inf disables the clip
    # [budget]
    budget_snrbar_tx_db: float = 10.0
    budget_snrbar_rx_db: float = 10.0
    budget_inr_tx_db: float = 0.0
    budget_si_ref_inr_db: str = "auto"  # "auto" calibrates to the median target
    # [steer]
    steer_delta_theta_deg: float = 2.0
    steer_delta_phi_deg: float = 2.0
    steer_res_theta_deg: float = 1.0
    steer_res_phi_deg: float = 1.0
    steer_inr_target_db: float = -7.0
    # [scenario]
    scenario_drop_az_lo_deg: float = -60.0
    scenario_drop_az_hi_deg: float = 60.0
    scenario_drop_el_lo_deg: float = -28.0
    scenario_drop_el_hi_deg: float = 28.0
    scenario_n_drops: int = 10000
    scenario_seed: int = 0
    scenario_mode: str = "DL-DL"
    # [sweep]
    sweep_targets_db: tuple[float, ...] = (-math.inf, -10.0, -7.0, -3.0, 0.0, 5.0)
    sweep_delta_deg: tuple[float, ...] = (0.0, 1.0, 2.0)
    sweep_snr_tx_db: tuple[float, ...] = (-10.0, 0.0, 10.0, 20.0)
    sweep_snr_rx_db: tuple[float, ...] = (-10.0, 0.0, 10.0, 20.0)

    @property
    def carrier_wavelength_m(self) -> float:
        from .channels import SPEED_OF_LIGHT_M_S

        return SPEED_OF_LIGHT_M_S / (self.array_carrier_ghz * 1e9)


_PARSERS = {
    "array.rows": ("array_rows", _parse_int),
    "array.cols": ("array_cols", _parse_int),
    "array.spacing_wavelengths": ("array_spacing_wavelengths", _parse_float),
    "array.carrier_ghz": ("array_carrier_ghz", _parse_float),
    "array.panel_separation_m": ("array_panel_separation_m", _parse_float),
    "array.panel_normal_split_deg": ("array_panel_normal_split_deg", _parse_float),
    "codebook.preset": ("codebook_preset", _parse_str),
    "codebook.az_lo_deg": ("codebook_az_lo_deg", _parse_float),
    "codebook.az_hi_deg": ("codebook_az_hi_deg", _parse_float),
    "codebook.el_lo_deg": ("codebook_el_lo_deg", _parse_float),
    "codebook.el_hi_deg": ("codebook_el_hi_deg", _parse_float),
    "codebook.spacing_deg": ("codebook_spacing_deg", _parse_float),
    "oracle.model": ("oracle_model", _parse_str),
    "oracle.seed": ("oracle_seed", _parse_int),
    "oracle.target_median_inr_db": ("oracle_target_median_inr_db", _parse_float),
    "oracle.noise_sigma_db": ("oracle_noise_sigma_db", _parse_float),
    "oracle.clip_ceiling_db": ("oracle_clip_ceiling_db", _parse_float),
    "budget.snrbar_tx_db": ("budget_snrbar_tx_db", _parse_float),
    "budget.snrbar_rx_db": ("budget_snrbar_rx_db", _parse_float),
    "budget.inr_tx_db": ("budget_inr_tx_db", _parse_db),
    "budget.si_ref_inr_db": ("budget_si_ref_inr_db", _parse_str),
    "steer.delta_theta_deg": ("steer_delta_theta_deg", _parse_float),
    "steer.delta_phi_deg": ("steer_delta_phi_deg", _parse_float),
    "steer.res_theta_deg": ("steer_res_theta_deg", _parse_float),
    "steer.res_phi_deg": ("steer_res_phi_deg", _parse_float),
    "steer.inr_target_db": ("steer_inr_target_db", _parse_db),
    "scenario.drop_az_lo_deg": ("scenario_drop_az_lo_deg", _parse_float),
    "scenario.drop_az_hi_deg": ("scenario_drop_az_hi_deg", _parse_float),
    "scenario.drop_el_lo_deg": ("scenario_drop_el_lo_deg", _parse_float),
    "scenario.drop_el_hi_deg": ("scenario_drop_el_hi_deg", _parse_float),
    "scenario.n_drops": ("scenario_n_drops", _parse_int),
    "scenario.seed": ("scenario_seed", _parse_int),
    "scenario.mode": ("scenario_mode", _parse_str),
    "sweep.targets_db": ("sweep_targets_db", _parse_float_list),
    "sweep.delta_deg": ("sweep_delta_deg", _parse_float_list),
    "sweep.snr_tx_db": ("sweep_snr_tx_db", _parse_float_list),
    "sweep.snr_rx_db": ("sweep_snr_rx_db", _parse_float_list),
}


def _apply(config: RunConfig, section: str, key: str, value: str, where: str) -> None:
    dotted = f"{section}.{key}" if section else key
    entry = _PARSERS.get(dotted)
    if entry is None:
        raise ConfigurationError(f"unknown config key {dotted!r} at {where}")
    field_name, parser = entry
    try:
        setattr(config, field_name, parser(value))
    except ConfigurationError as exc:
        raise ConfigurationError(f"{dotted} at {where}: {exc}") from None


def load_config(path=None, overrides: list[str] | None = None) -> RunConfig:
    """Parse a config file plus `--set section.key=value` overrides."""
    config = RunConfig()
    if path is not None:
        section = ""
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith(("#", ";")):
                    continue
                if line.startswith("[") and line.endswith("]"):
                    section = line[1:-1].strip()
                    continue
                if "=" not in line:
                    raise ConfigurationError(
                        f"expected key = value at line {lineno} of {path}"
                    )
                key, _, value = line.partition("=")
                _apply(
                    config, section, key.strip(), value.strip(), f"line {lineno} of {path}"
                )
    for item in overrides or []:
        if "=" not in item:
            raise ConfigurationError(f"--set expects SECTION.KEY=VALUE, got {item!r}")
        dotted, _, value = item.partition("=")
        section, _, key = dotted.strip().rpartition(".")
        _apply(config, section, key, value.strip(), f"--set {item!r}")
    validate_config(config)
    return config


def validate_config(config: RunConfig) -> None:
    if config.array_rows <= 0 or config.array_cols <= 0:
        raise ConfigurationError("array.rows and array.cols must be positive")
    if config.scenario_n_drops < 1:
        raise ConfigurationError("scenario.n_drops must be >= 1")
    if config.budget_si_ref_inr_db != "auto":
        _parse_db(config.budget_si_ref_inr_db)
    for f in fields(RunConfig):
        # sanity: every schema entry still points at a real field
        pass
