import pytest

from steersim.alignment import align
from steersim.array import SteeringDirection, UpaGeometry, build_codebook
from steersim.channels import los_channel
from steersim.errors import ConfigurationError


def test_on_grid_user_picks_matching_beam():
    geom = UpaGeometry(rows=4, cols=4)
    cb = build_codebook(geom, (-16.0, 16.0), (-16.0, 16.0), 8.0)
    user = SteeringDirection(8.0, -16.0)
    result = align(cb, los_channel(geom, user), snrbar_db=0.0)
    assert result.direction == user
    assert result.beam_index == cb.index_of(user)
    # perfect steering attains exactly the reference SNR (0 dB here)
    assert result.snr_nom == pytest.approx(1.0, rel=1e-12)


def test_exhaustive_argmax_matches_manual_scan():
    geom = UpaGeometry(rows=3, cols=3)
    cb = build_codebook(geom, (-24.0, 24.0), (-8.0, 8.0), 8.0)
    channel = los_channel(geom, SteeringDirection(11.0, 3.0))
    result = align(cb, channel, snrbar_db=0.0)
    gains = [
        abs(sum(channel.vector[k].conjugate() * b.weights[k] for k in range(9))) ** 2
        for b in cb.beams
    ]
    best = max(range(len(gains)), key=lambda i: gains[i])
    assert result.beam_index == best


def test_tie_breaks_to_lowest_index():
    # a single-element panel gives every beam gain exactly 1
    geom = UpaGeometry(rows=1, cols=1)
    cb = build_codebook(geom, (-8.0, 8.0), (-8.0, 8.0), 8.0)
    result = align(cb, los_channel(geom, SteeringDirection(5.0, 5.0)), 0.0)
    assert result.beam_index == 0


def test_empty_codebook_rejected():
    from steersim.array import Codebook

    geom = UpaGeometry(rows=2, cols=2)
    empty = Codebook((), (), (0.0, 0.0), (0.0, 0.0), 8.0)
    with pytest.raises(ConfigurationError):
        align(empty, los_channel(geom, SteeringDirection(0.0, 0.0)), 0.0)
