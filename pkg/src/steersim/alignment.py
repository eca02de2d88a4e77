"""Conventional half-duplex beam alignment: exhaustive codebook sweep."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array import Codebook, SteeringDirection
from .channels import LosChannel
from .errors import ConfigurationError
from .linkmetrics import snr_with_beam


@dataclass(frozen=True)
class AlignmentResult:
    beam_index: int
    direction: SteeringDirection
    snr_nom: float


def align(codebook: Codebook, channel: LosChannel, snrbar_db: float) -> AlignmentResult:
    """Pick the codebook beam maximizing |h* f|^2; ties go to the lowest index."""
    if len(codebook) == 0:
        raise ConfigurationError("empty codebook")
    gains = np.abs(channel.vector.conj() @ codebook.beam_matrix) ** 2
    best = int(np.argmax(gains))
    return AlignmentResult(
        beam_index=best,
        direction=codebook.directions[best],
        snr_nom=snr_with_beam(snrbar_db, channel, codebook.beams[best]),
    )
