"""Scalar link-quality math: SNR, INR, SINR, rates, and strategy comparison.

All beamforming quantities here are dimensionless gain fractions; large-scale
path gains and device powers are absorbed into the dB reference levels held
by LinkBudget.  The self-interference reference level si_ref_inr_db is the
INR a hypothetical full-gain coupling (|w* H f|^2 = Na^2) would incur, hence
the division by Na^2 in inr_from_si.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .array import BeamWeights
from .channels import LosChannel, SiChannel
from .errors import ConfigurationError, DimensionError

STRATEGIES = ("TDD", "TDD-PC", "FD-CONV", "FD-STEER")


def db_to_linear(db: float) -> float:
    if db == -math.inf:
        return 0.0
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    if x < 0:
        raise ValueError(f"negative power {x}")
    if x == 0.0:
        return -math.inf
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class LinkBudget:
    """Scenario-level reference levels, all in dB.

    snrbar_*: maximum link SNRs with perfect steering.
    inr_tx_db: fixed cross-link interference at the transmit-link user
    (may be -inf for none).
    si_ref_inr_db: full-gain-coupling self-interference reference.
    """

    snrbar_tx_db: float
    snrbar_rx_db: float
    inr_tx_db: float
    si_ref_inr_db: float

    def __post_init__(self):
        for name in ("snrbar_tx_db", "snrbar_rx_db", "si_ref_inr_db"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"{name} must be finite")
        if math.isnan(self.inr_tx_db) or self.inr_tx_db == math.inf:
            raise ConfigurationError("inr_tx_db must be finite or -inf")


@dataclass(frozen=True)
class LinkRates:
    r_tx: float
    r_rx: float
    r_sum: float
    kappa_sum: float


def snr_with_beam(snrbar_db: float, channel: LosChannel, beam: BeamWeights) -> float:
    """Linear SNR achieved by a beam: snrbar * |h* f|^2 / Na."""
    h = channel.vector
    f = beam.weights
    if h.shape != f.shape:
        raise DimensionError(f"channel {h.shape} vs beam {f.shape}")
    na = h.shape[0]
    gain = abs(np.vdot(h, f)) ** 2 / na
    return db_to_linear(snrbar_db) * gain


def inr_from_si(
    si_ref_inr_db: float,
    si: SiChannel,
    tx_beam: BeamWeights,
    rx_beam: BeamWeights,
) -> float:
    """Linear receive-link INR: ref * |w* H f|^2 / Na^2."""
    h = si.matrix
    f = tx_beam.weights
    w = rx_beam.weights
    if h.shape != (w.shape[0], f.shape[0]):
        raise DimensionError(f"SI matrix {h.shape} vs beams {w.shape}, {f.shape}")
    na = f.shape[0]
    coupling = abs(np.vdot(w, h @ f)) ** 2 / (na * na)
    return db_to_linear(si_ref_inr_db) * coupling


def sinr(snr: float, inr: float) -> float:
    if snr < 0 or inr < 0:
        raise ValueError(f"negative snr/inr: ({snr}, {inr})")
    return snr / (1.0 + inr)


def spectral_efficiency(sinr_linear: float) -> float:
    if sinr_linear < 0:
        raise ValueError(f"negative sinr {sinr_linear}")
    return math.log2(1.0 + sinr_linear)


def strategy_rates(
    budget: LinkBudget,
    snr_tx_nom: float,
    snr_rx_nom: float,
    snr_tx_sel: float,
    snr_rx_sel: float,
    inr_rx_sel: float,
    strategy: str,
) -> LinkRates:
    """Per-link and sum spectral efficiency for one multiplexing strategy.

    TDD halves time on each link; TDD-PC additionally doubles transmit power
    (average power constraint).  The full-duplex strategies run both links
    simultaneously, the transmit link degraded by the fixed cross-link INR
    and the receive link by the selected beams' self-interference.
    kappa_sum normalizes the sum rate by the codebook capacity, i.e. the
    interference-free rates at the nominal SNRs.
    """
    capacity_sum = math.log2(1.0 + snr_tx_nom) + math.log2(1.0 + snr_rx_nom)
    if capacity_sum == 0.0:
        raise ConfigurationError("zero codebook capacity: kappa undefined")
    if strategy == "TDD":
        r_tx = 0.5 * math.log2(1.0 + snr_tx_nom)
        r_rx = 0.5 * math.log2(1.0 + snr_rx_nom)
    elif strategy == "TDD-PC":
        r_tx = 0.5 * math.log2(1.0 + 2.0 * snr_tx_nom)
        r_rx = 0.5 * math.log2(1.0 + 2.0 * snr_rx_nom)
    elif strategy in ("FD-CONV", "FD-STEER"):
        inr_tx = db_to_linear(budget.inr_tx_db)
        r_tx = spectral_efficiency(sinr(snr_tx_sel, inr_tx))
        r_rx = spectral_efficiency(sinr(snr_rx_sel, inr_rx_sel))
    else:
        raise ConfigurationError(f"unknown strategy {strategy!r}; expected {STRATEGIES}")
    r_sum = r_tx + r_rx
    return LinkRates(r_tx=r_tx, r_rx=r_rx, r_sum=r_sum, kappa_sum=r_sum / capacity_sum)
