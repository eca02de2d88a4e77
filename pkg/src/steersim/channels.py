"""LOS link channels and the synthetic self-interference channel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array import SteeringDirection, UpaGeometry, array_response
from .errors import ConfigurationError, GeometryError

SPEED_OF_LIGHT_M_S = 299_792_458.0

SI_MODELS = ("spherical-wave", "rayleigh")


@dataclass(frozen=True)
class LosChannel:
    """Line-of-sight channel vector toward a single user direction.

    Normalized so the squared norm equals the element count.
    """

    user_direction: SteeringDirection
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex)
        object.__setattr__(self, "vector", v)
        na = v.shape[0]
        norm_sq = float(np.vdot(v, v).real)
        if abs(norm_sq - na) > 1e-9 * na:
            raise ConfigurationError(
                f"channel squared norm {norm_sq} deviates from element count {na}"
            )


@dataclass(frozen=True)
class SiChannel:
    """Self-interference coupling matrix between the tx and rx panels.

    Frobenius-normalized so ||H||_F^2 equals the squared element count.
    """

    matrix: np.ndarray
    model_tag: str

    def __post_init__(self):
        h = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", h)
        na = h.shape[1]
        target = float(na * na)
        fro_sq = float(np.sum(np.abs(h) ** 2))
        if abs(fro_sq - target) > 1e-9 * target:
            raise ConfigurationError(
                f"SI channel Frobenius norm^2 {fro_sq} deviates from {target}"
            )


def los_channel(geometry: UpaGeometry, user_direction: SteeringDirection) -> LosChannel:
    """LOS channel equals the array response toward the user."""
    return LosChannel(user_direction, array_response(geometry, user_direction))


def _renormalize(h: np.ndarray, na: int) -> np.ndarray:
    fro = np.linalg.norm(h)
    if fro == 0:
        raise GeometryError("degenerate all-zero SI channel")
    return h * (na / fro)


def synthesize_si_channel(
    tx_geometry: UpaGeometry,
    rx_geometry: UpaGeometry,
    carrier_wavelength_m: float,
    model: str = "spherical-wave",
    seed: int = 0,
) -> SiChannel:
    """Build a synthetic coupling matrix between the two panels.

    "spherical-wave" traces the exact 3-D distance between every rx/tx
    element pair given the panel placements: entry (m, n) has amplitude
    d0/d_mn (d0 the minimum distance) and phase -2*pi*d_mn/lambda.
    "rayleigh" draws i.i.d. complex Gaussian entries.  Both are
    Frobenius-renormalized and deterministic given the seed.
    """
    if tx_geometry.num_elements != rx_geometry.num_elements:
        raise ConfigurationError("tx and rx panels must have equal element counts")
    na = tx_geometry.num_elements
    if model == "spherical-wave":
        tx_pos = tx_geometry.element_positions(carrier_wavelength_m)
        rx_pos = rx_geometry.element_positions(carrier_wavelength_m)
        diff = rx_pos[:, None, :] - tx_pos[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        if np.any(dist == 0):
            raise GeometryError("panels overlap: zero element-to-element distance")
        d0 = dist.min()
        h = (d0 / dist) * np.exp(-2j * np.pi * dist / carrier_wavelength_m)
    elif model == "rayleigh":
        rng = np.random.default_rng(seed)
        h = rng.standard_normal((na, na)) + 1j * rng.standard_normal((na, na))
    else:
        raise ConfigurationError(
            f"unknown SI model {model!r}; expected one of {SI_MODELS}"
        )
    return SiChannel(_renormalize(h, na), model)
