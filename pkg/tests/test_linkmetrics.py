import math

import numpy as np
import pytest

from steersim.array import BeamWeights, SteeringDirection
from steersim.channels import LosChannel, SiChannel
from steersim.errors import ConfigurationError, DimensionError
from steersim.linkmetrics import (
    LinkBudget,
    db_to_linear,
    inr_from_si,
    linear_to_db,
    sinr,
    snr_with_beam,
    spectral_efficiency,
    strategy_rates,
)


def _unit(v):
    v = np.asarray(v, dtype=complex)
    return BeamWeights(v / np.linalg.norm(v))


def _channel(v):
    v = np.asarray(v, dtype=complex)
    na = v.shape[0]
    return LosChannel(SteeringDirection(0.0, 0.0), v * math.sqrt(na) / np.linalg.norm(v))


def test_db_conversions():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(10.0) == pytest.approx(10.0, rel=1e-12)
    assert db_to_linear(-math.inf) == 0.0
    assert linear_to_db(100.0) == pytest.approx(20.0, abs=1e-12)
    assert linear_to_db(0.0) == -math.inf
    with pytest.raises(ValueError):
        linear_to_db(-1.0)


def test_snr_with_beam_direct_summation():
    rng = np.random.default_rng(3)
    h = _channel(rng.standard_normal(6) + 1j * rng.standard_normal(6))
    f = _unit(rng.standard_normal(6) + 1j * rng.standard_normal(6))
    # oracle: explicit inner-product sum
    acc = sum(h.vector[k].conjugate() * f.weights[k] for k in range(6))
    expected = db_to_linear(7.0) * abs(acc) ** 2 / 6
    assert snr_with_beam(7.0, h, f) == pytest.approx(expected, rel=1e-12)


def test_inr_from_si_triple_loop():
    rng = np.random.default_rng(4)
    na = 5
    raw = rng.standard_normal((na, na)) + 1j * rng.standard_normal((na, na))
    raw *= na / np.linalg.norm(raw)
    si = SiChannel(raw, "rayleigh")
    f = _unit(rng.standard_normal(na) + 1j * rng.standard_normal(na))
    w = _unit(rng.standard_normal(na) + 1j * rng.standard_normal(na))
    acc = 0j
    for m in range(na):
        for n in range(na):
            acc += w.weights[m].conjugate() * raw[m, n] * f.weights[n]
    expected = db_to_linear(-3.0) * abs(acc) ** 2 / (na * na)
    assert inr_from_si(-3.0, si, f, w) == pytest.approx(expected, rel=1e-12)


def test_dimension_mismatches():
    h = _channel([1.0, 1.0, 1.0])
    f = _unit([1.0, 1.0])
    with pytest.raises(DimensionError):
        snr_with_beam(0.0, h, f)


def test_sinr_and_spectral_efficiency_hand_values():
    assert sinr(10.0, 1.0) == pytest.approx(5.0, abs=1e-12)
    assert spectral_efficiency(3.0) == pytest.approx(2.0, abs=1e-12)
    assert spectral_efficiency(0.0) == 0.0
    with pytest.raises(ValueError):
        sinr(-1.0, 0.0)


def test_budget_validation():
    LinkBudget(10.0, 10.0, -math.inf, 0.0)
    with pytest.raises(ConfigurationError):
        LinkBudget(math.inf, 10.0, 0.0, 0.0)
    with pytest.raises(ConfigurationError):
        LinkBudget(10.0, 10.0, math.inf, 0.0)


BUDGET = LinkBudget(10.0, 10.0, 0.0, 0.0)


def test_tdd_kappa_is_half():
    rates = strategy_rates(BUDGET, 4.0, 9.0, 4.0, 9.0, 0.0, "TDD")
    assert rates.r_tx == pytest.approx(0.5 * math.log2(5.0), rel=1e-12)
    assert rates.kappa_sum == 0.5


def test_tdd_pc_doubles_power():
    rates = strategy_rates(BUDGET, 4.0, 4.0, 4.0, 4.0, 0.0, "TDD-PC")
    assert rates.r_sum == pytest.approx(math.log2(9.0), rel=1e-12)


def test_fd_kappa_is_one_without_interference():
    budget = LinkBudget(10.0, 10.0, -math.inf, 0.0)
    rates = strategy_rates(budget, 4.0, 9.0, 4.0, 9.0, 0.0, "FD-STEER")
    assert rates.kappa_sum == pytest.approx(1.0, rel=1e-12)


def test_fd_conv_applies_both_interference_terms():
    budget = LinkBudget(10.0, 10.0, 0.0, 0.0)  # inr_tx of 0 dB is linear 1
    rates = strategy_rates(budget, 4.0, 9.0, 4.0, 9.0, 3.0, "FD-CONV")
    assert rates.r_tx == pytest.approx(math.log2(1 + 4.0 / 2.0), rel=1e-12)
    assert rates.r_rx == pytest.approx(math.log2(1 + 9.0 / 4.0), rel=1e-12)


def test_strategy_errors():
    with pytest.raises(ConfigurationError):
        strategy_rates(BUDGET, 1.0, 1.0, 1.0, 1.0, 0.0, "FDD")
    with pytest.raises(ConfigurationError):
        strategy_rates(BUDGET, 0.0, 0.0, 0.0, 0.0, 0.0, "TDD")
