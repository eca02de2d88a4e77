"""Uniform planar array geometry, responses, conjugate beams, and codebooks.

Axis convention: azimuth rotates about the panel's vertical axis, elevation
about its horizontal axis.  The phase of element (r, c) relative to element
(0, 0) is 2*pi*spacing*(r*sin(el) + c*cos(el)*sin(az)) in the panel-local
frame.  Every quantity downstream is a gain magnitude, so any consistent
convention is equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, DirectionError


@dataclass(frozen=True, order=True)
class SteeringDirection:
    """An (azimuth, elevation) pair in degrees; ordering is lexicographic."""

    azimuth_deg: float
    elevation_deg: float

    def __post_init__(self):
        if not (-90.0 <= self.azimuth_deg <= 90.0):
            raise DirectionError(f"azimuth {self.azimuth_deg} deg outside [-90, 90]")
        if not (-90.0 <= self.elevation_deg <= 90.0):
            raise DirectionError(f"elevation {self.elevation_deg} deg outside [-90, 90]")

    def shifted(self, d_az: float, d_el: float) -> "SteeringDirection":
        return SteeringDirection(self.azimuth_deg + d_az, self.elevation_deg + d_el)


@dataclass(frozen=True)
class UpaGeometry:
    """A uniform planar array panel and its placement on the platform."""

    rows: int
    cols: int
    element_spacing_wavelengths: float = 0.5
    panel_center_m: tuple[float, float, float] = (0.0, 0.0, 0.0)
    panel_normal_azimuth_deg: float = 0.0

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ConfigurationError("rows and cols must be positive")
        if self.element_spacing_wavelengths <= 0:
            raise ConfigurationError("element spacing must be positive")

    @property
    def num_elements(self) -> int:
        return self.rows * self.cols

    def element_positions(self, carrier_wavelength: float) -> np.ndarray:
        """3-D element positions in meters, shape (num_elements, 3).

        Elements are ordered row-major, matching array_response.  The panel
        face is vertical; its horizontal axis is the normal rotated +90 deg
        in azimuth.
        """
        d = self.element_spacing_wavelengths * carrier_wavelength
        az_n = np.deg2rad(self.panel_normal_azimuth_deg)
        u_h = np.array([-np.sin(az_n), np.cos(az_n), 0.0])
        u_v = np.array([0.0, 0.0, 1.0])
        r_idx, c_idx = np.meshgrid(
            np.arange(self.rows), np.arange(self.cols), indexing="ij"
        )
        r_off = (r_idx - (self.rows - 1) / 2.0).reshape(-1, 1)
        c_off = (c_idx - (self.cols - 1) / 2.0).reshape(-1, 1)
        center = np.asarray(self.panel_center_m, dtype=float)
        return center + d * (c_off * u_h + r_off * u_v)


@dataclass(frozen=True)
class BeamWeights:
    """Unit-norm complex weight vector for one panel."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        object.__setattr__(self, "weights", w)
        norm_sq = float(np.vdot(w, w).real)
        if abs(norm_sq - 1.0) > 1e-12:
            raise ConfigurationError(f"beam weights have squared norm {norm_sq}, expected 1")

    def __len__(self) -> int:
        return self.weights.shape[0]


def array_response(geometry: UpaGeometry, direction: SteeringDirection) -> np.ndarray:
    """Unit-modulus array response vector of length num_elements.

    Element (r, c) sits at flat index r*cols + c.
    """
    az = np.deg2rad(direction.azimuth_deg)
    el = np.deg2rad(direction.elevation_deg)
    r_idx, c_idx = np.meshgrid(
        np.arange(geometry.rows), np.arange(geometry.cols), indexing="ij"
    )
    phase = (
        2.0
        * np.pi
        * geometry.element_spacing_wavelengths
        * (r_idx * np.sin(el) + c_idx * np.cos(el) * np.sin(az))
    )
    return np.exp(1j * phase).reshape(-1)


def conjugate_beam(geometry: UpaGeometry, direction: SteeringDirection) -> BeamWeights:
    """Matched-filter (equal gain) beam steering toward the given direction."""
    a = array_response(geometry, direction)
    return BeamWeights(a / np.sqrt(geometry.num_elements))


def _grid_axis(lo: float, hi: float, spacing: float) -> list[float]:
    if spacing <= 0:
        raise ConfigurationError("grid spacing must be positive")
    span = hi - lo
    if span < 0:
        raise ConfigurationError(f"range ({lo}, {hi}) is inverted")
    steps = span / spacing
    n = round(steps)
    if abs(steps - n) > 1e-9:
        raise ConfigurationError(
            f"range ({lo}, {hi}) is not divisible by spacing {spacing}"
        )
    # Integer step counts keep grid values exact for repeated lookups.
    return [lo + k * spacing for k in range(int(n) + 1)]


@dataclass(frozen=True)
class Codebook:
    """A grid of steering directions and their conjugate beams.

    Grid order is elevation-major: the azimuth axis varies fastest within
    each elevation row.
    """

    directions: tuple[SteeringDirection, ...]
    beams: tuple[BeamWeights, ...]
    azimuth_range_deg: tuple[float, float]
    elevation_range_deg: tuple[float, float]
    spacing_deg: float
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if len(self.directions) != len(self.beams):
            raise ConfigurationError("directions and beams must have equal length")
        index = {d: i for i, d in enumerate(self.directions)}
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.directions)

    def index_of(self, direction: SteeringDirection) -> int:
        return self._index[direction]

    @cached_property
    def beam_matrix(self) -> np.ndarray:
        """Beams stacked column-wise, shape (num_elements, num_beams)."""
        return np.column_stack([b.weights for b in self.beams])


def build_codebook(
    geometry: UpaGeometry,
    az_range_deg: tuple[float, float],
    el_range_deg: tuple[float, float],
    spacing_deg: float,
) -> Codebook:
    azimuths = _grid_axis(az_range_deg[0], az_range_deg[1], spacing_deg)
    elevations = _grid_axis(el_range_deg[0], el_range_deg[1], spacing_deg)
    directions = tuple(
        SteeringDirection(az, el) for el in elevations for az in azimuths
    )
    beams = tuple(conjugate_beam(geometry, d) for d in directions)
    return Codebook(
        directions=directions,
        beams=beams,
        azimuth_range_deg=tuple(az_range_deg),
        elevation_range_deg=tuple(el_range_deg),
        spacing_deg=spacing_deg,
    )


#: Named codebook presets: (az range, el range, spacing).  "paper-28ghz" is
#: the 105-beam 28 GHz layout used by the default scenario.
CODEBOOK_PRESETS: dict[str, tuple[tuple[float, float], tuple[float, float], float]] = {
    "paper-28ghz": ((-56.0, 56.0), (-24.0, 24.0), 8.0),
}


def codebook_preset(name: str, geometry: UpaGeometry) -> Codebook:
    try:
        az_range, el_range, spacing = CODEBOOK_PRESETS[name]
    except KeyError:
        raise ConfigurationError(f"unknown codebook preset {name!r}") from None
    return build_codebook(geometry, az_range, el_range, spacing)
