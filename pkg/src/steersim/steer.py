"""Joint transmit/receive beam selection around the nominal aligned beams.

Candidate direction pairs within a small spatial neighborhood of the nominal
pair are ranked by squared deviation and searched for the first pair whose
measured receive-link INR meets a target.  Two solvers share one total
order: an exhaustive reference that measures the whole neighborhood, and an
incremental one that stops as soon as the target is met.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .array import Codebook, SteeringDirection
from .errors import ConfigurationError, SteersimError

LOOKUP_HEADER = (
    "i,j,theta_tx_star,phi_tx_star,theta_rx_star,phi_rx_star,"
    "inr_db,measurements,target_met"
)


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Search extent (delta) and resolution (res) per axis, in degrees."""

    delta_theta_deg: float
    delta_phi_deg: float
    res_theta_deg: float
    res_phi_deg: float

    def __post_init__(self):
        if self.delta_theta_deg < 0 or self.delta_phi_deg < 0:
            raise ConfigurationError("neighborhood extent must be >= 0")
        if self.res_theta_deg <= 0 or self.res_phi_deg <= 0:
            raise ConfigurationError("neighborhood resolution must be > 0")
        if self.delta_theta_deg > 0 and self.res_theta_deg > self.delta_theta_deg:
            raise ConfigurationError("azimuth resolution exceeds extent")
        if self.delta_phi_deg > 0 and self.res_phi_deg > self.delta_phi_deg:
            raise ConfigurationError("elevation resolution exceeds extent")

    @property
    def k_theta(self) -> int:
        return math.floor(self.delta_theta_deg / self.res_theta_deg)

    @property
    def k_phi(self) -> int:
        return math.floor(self.delta_phi_deg / self.res_phi_deg)

    @property
    def size(self) -> int:
        """Offsets per link: (2*K_theta + 1) * (2*K_phi + 1)."""
        return (2 * self.k_theta + 1) * (2 * self.k_phi + 1)

    @property
    def pair_count(self) -> int:
        """Full tx-rx pair set size: size squared."""
        return self.size * self.size


@dataclass(frozen=True)
class SteerConfig:
    spec: NeighborhoodSpec
    inr_target_db: float = -7.0


@dataclass(frozen=True)
class SteerSolution:
    d_tx_star: SteeringDirection
    d_rx_star: SteeringDirection
    inr_achieved_db: float
    deviation: tuple[float, float]
    measurements_used: int
    target_met: bool


def neighborhood_offsets(spec: NeighborhoodSpec) -> list[tuple[float, float]]:
    """Offsets for one link, ordered azimuth-ascending then elevation-ascending."""
    kt, kp = spec.k_theta, spec.k_phi
    return [
        (m * spec.res_theta_deg, n * spec.res_phi_deg)
        for m in range(-kt, kt + 1)
        for n in range(-kp, kp + 1)
    ]


@lru_cache(maxsize=None)
def _sorted_offset_pairs(spec: NeighborhoodSpec):
    """Tx/rx offset pairs sorted by max-deviation key, tie-broken lexically.

    The key for a pair is dev_az^2 + dev_el^2 where dev_az is the larger
    absolute azimuth offset across the two links (likewise for elevation).
    Independent of the nominal directions, so cached per spec.
    """
    offsets = neighborhood_offsets(spec)
    pairs = [(ot, orx) for ot in offsets for orx in offsets]

    def key(pair):
        (at, et), (ar, er) = pair
        dev_az = max(abs(at), abs(ar))
        dev_el = max(abs(et), abs(er))
        return (dev_az * dev_az + dev_el * dev_el, at, et, ar, er)

    return tuple(sorted(pairs, key=key))


def sort_pairs_by_deviation(
    nominal_tx: SteeringDirection,
    nominal_rx: SteeringDirection,
    spec: NeighborhoodSpec,
) -> list[tuple[SteeringDirection, SteeringDirection]]:
    """All candidate (tx, rx) direction pairs in the shared search order."""
    return [
        (nominal_tx.shifted(*off_tx), nominal_rx.shifted(*off_rx))
        for off_tx, off_rx in _sorted_offset_pairs(spec)
    ]


def _deviation(off_tx, off_rx) -> tuple[float, float]:
    return (
        max(abs(off_tx[0]), abs(off_rx[0])),
        max(abs(off_tx[1]), abs(off_rx[1])),
    )


def solve_steer_exhaustive(
    oracle,
    nominal_tx: SteeringDirection,
    nominal_rx: SteeringDirection,
    config: SteerConfig,
) -> SteerSolution:
    """Measure the whole neighborhood, then pick the closest feasible pair.

    Feasible pairs have INR at or below max(target, neighborhood minimum);
    the returned pair is minimal in the shared deviation order.
    """
    ordered = _sorted_offset_pairs(config.spec)
    target_db = config.inr_target_db
    values = []
    for off_tx, off_rx in ordered:
        d_tx = nominal_tx.shifted(*off_tx)
        d_rx = nominal_rx.shifted(*off_rx)
        values.append((oracle.query_inr_db(d_tx, d_rx), d_tx, d_rx, off_tx, off_rx))
    inr_min_db = min(v[0] for v in values)
    bound_db = max(target_db, inr_min_db)
    for inr_db, d_tx, d_rx, off_tx, off_rx in values:
        if inr_db <= bound_db:
            return SteerSolution(
                d_tx_star=d_tx,
                d_rx_star=d_rx,
                inr_achieved_db=inr_db,
                deviation=_deviation(off_tx, off_rx),
                measurements_used=len(values),
                target_met=inr_db <= target_db,
            )
    raise SteersimError("unreachable: neighborhood minimum is always feasible")


def solve_steer_incremental(
    oracle,
    nominal_tx: SteeringDirection,
    nominal_rx: SteeringDirection,
    config: SteerConfig,
) -> SteerSolution:
    """Measure pairs in deviation order, stopping once the target is met.

    Tracks the running minimum with a strict less-than update, so on ties
    the earlier (closer) pair wins; matches the exhaustive solver exactly.
    """
    target_db = config.inr_target_db
    best_db = math.inf
    best = None
    measurements = 0
    for off_tx, off_rx in _sorted_offset_pairs(config.spec):
        d_tx = nominal_tx.shifted(*off_tx)
        d_rx = nominal_rx.shifted(*off_rx)
        inr_db = oracle.query_inr_db(d_tx, d_rx)
        measurements += 1
        if inr_db < best_db:
            best_db = inr_db
            best = (d_tx, d_rx, off_tx, off_rx)
            if inr_db <= target_db:
                break
    d_tx, d_rx, off_tx, off_rx = best
    return SteerSolution(
        d_tx_star=d_tx,
        d_rx_star=d_rx,
        inr_achieved_db=best_db,
        deviation=_deviation(off_tx, off_rx),
        measurements_used=measurements,
        target_met=best_db <= target_db,
    )


def precompute_lookup(
    oracle,
    codebook_tx: Codebook,
    codebook_rx: Codebook,
    config: SteerConfig,
) -> dict[tuple[int, int], SteerSolution]:
    """Solve once per nominal codebook index pair (i, j)."""
    table: dict[tuple[int, int], SteerSolution] = {}
    for i, d_tx in enumerate(codebook_tx.directions):
        for j, d_rx in enumerate(codebook_rx.directions):
            try:
                table[(i, j)] = solve_steer_incremental(oracle, d_tx, d_rx, config)
            except SteersimError as exc:
                raise SteersimError(f"lookup precompute failed at ({i}, {j}): {exc}") from exc
    return table


def _fmt(x: float) -> str:
    # shortest representation that round-trips exactly through float()
    return repr(float(x))


def save_lookup(table: dict[tuple[int, int], SteerSolution], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(LOOKUP_HEADER + "\n")
        for (i, j) in sorted(table):
            sol = table[(i, j)]
            fh.write(
                ",".join(
                    [
                        str(i),
                        str(j),
                        _fmt(sol.d_tx_star.azimuth_deg),
                        _fmt(sol.d_tx_star.elevation_deg),
                        _fmt(sol.d_rx_star.azimuth_deg),
                        _fmt(sol.d_rx_star.elevation_deg),
                        _fmt(sol.inr_achieved_db),
                        str(sol.measurements_used),
                        "1" if sol.target_met else "0",
                    ]
                )
                + "\n"
            )


def load_lookup(path) -> dict[tuple[int, int], dict]:
    """Read a precomputed lookup table; rows keyed by (i, j)."""
    from .errors import GridParseError

    table: dict[tuple[int, int], dict] = {}
    header_seen = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not header_seen:
                if line != LOOKUP_HEADER:
                    raise GridParseError(
                        f"expected header {LOOKUP_HEADER!r}, got {line!r}", lineno
                    )
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != 9:
                raise GridParseError(f"expected 9 fields, got {len(parts)}", lineno)
            try:
                i, j = int(parts[0]), int(parts[1])
                entry = {
                    "d_tx_star": SteeringDirection(float(parts[2]), float(parts[3])),
                    "d_rx_star": SteeringDirection(float(parts[4]), float(parts[5])),
                    "inr_achieved_db": float(parts[6]),
                    "measurements_used": int(parts[7]),
                    "target_met": parts[8] == "1",
                }
            except ValueError as exc:
                raise GridParseError(str(exc), lineno) from None
            if (i, j) in table:
                raise GridParseError(f"duplicate index pair ({i}, {j})", lineno)
            table[(i, j)] = entry
    if not header_seen:
        raise GridParseError("missing header line")
    return table
