import math

import numpy as np
import pytest

from steersim.array import SteeringDirection, UpaGeometry
from steersim.channels import los_channel, synthesize_si_channel
from steersim.errors import ConfigurationError, GeometryError

LAM = 0.0107  # roughly 28 GHz


def test_los_channel_norm_equals_element_count():
    geom = UpaGeometry(rows=3, cols=4)
    h = los_channel(geom, SteeringDirection(25.0, -10.0))
    assert float(np.vdot(h.vector, h.vector).real) == pytest.approx(12.0, rel=1e-12)


def test_spherical_wave_single_elements():
    # one element per panel 0.3 m apart: H is 1x1 with unit magnitude and
    # phase -2*pi*d/lambda
    tx = UpaGeometry(rows=1, cols=1, panel_center_m=(-0.15, 0.0, 0.0))
    rx = UpaGeometry(rows=1, cols=1, panel_center_m=(0.15, 0.0, 0.0))
    si = synthesize_si_channel(tx, rx, LAM, "spherical-wave")
    expected = np.exp(-2j * np.pi * 0.3 / LAM)
    assert si.matrix.shape == (1, 1)
    assert si.matrix[0, 0] == pytest.approx(expected, abs=1e-12)


def test_spherical_wave_hand_geometry():
    # 2x1 vertical pairs, facing each other along x; distances done by hand
    tx = UpaGeometry(rows=2, cols=1, element_spacing_wavelengths=0.5,
                     panel_center_m=(0.0, 0.0, 0.0))
    rx = UpaGeometry(rows=2, cols=1, element_spacing_wavelengths=0.5,
                     panel_center_m=(0.1, 0.0, 0.0))
    si = synthesize_si_channel(tx, rx, LAM, "spherical-wave")
    d = 0.5 * LAM
    tx_z = [-d / 2, d / 2]
    rx_z = [-d / 2, d / 2]
    dist = np.array([[math.hypot(0.1, zr - zt) for zt in tx_z] for zr in rx_z])
    d0 = dist.min()
    raw = (d0 / dist) * np.exp(-2j * np.pi * dist / LAM)
    expected = raw * (2 / np.linalg.norm(raw))
    assert si.matrix == pytest.approx(expected, abs=1e-12)
    assert float(np.sum(np.abs(si.matrix) ** 2)) == pytest.approx(4.0, rel=1e-12)


def test_rayleigh_deterministic_and_normalized():
    tx = UpaGeometry(rows=2, cols=2)
    rx = UpaGeometry(rows=2, cols=2, panel_center_m=(0.3, 0.0, 0.0))
    a = synthesize_si_channel(tx, rx, LAM, "rayleigh", seed=7)
    b = synthesize_si_channel(tx, rx, LAM, "rayleigh", seed=7)
    c = synthesize_si_channel(tx, rx, LAM, "rayleigh", seed=8)
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.array_equal(a.matrix, c.matrix)
    assert float(np.sum(np.abs(a.matrix) ** 2)) == pytest.approx(16.0, rel=1e-12)


def test_overlapping_panels_rejected():
    geom = UpaGeometry(rows=2, cols=2)
    with pytest.raises(GeometryError):
        synthesize_si_channel(geom, geom, LAM, "spherical-wave")


def test_unknown_model_rejected():
    tx = UpaGeometry(rows=2, cols=2)
    rx = UpaGeometry(rows=2, cols=2, panel_center_m=(0.3, 0.0, 0.0))
    with pytest.raises(ConfigurationError):
        synthesize_si_channel(tx, rx, LAM, "two-ray")


def test_mismatched_panels_rejected():
    tx = UpaGeometry(rows=2, cols=2)
    rx = UpaGeometry(rows=2, cols=3, panel_center_m=(0.3, 0.0, 0.0))
    with pytest.raises(ConfigurationError):
        synthesize_si_channel(tx, rx, LAM, "rayleigh")
