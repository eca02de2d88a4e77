"""Self-interference measurement oracle.

Answers "what receive-link INR does beam pair (d_tx, d_rx) incur?", either
by computing it on demand from a synthetic coupling channel (with caching)
or by looking it up in an ingested measurement grid file.  INR values are
held and serialized in dB; conversion to linear happens at the link-metric
boundary.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .array import Codebook, SteeringDirection, UpaGeometry, conjugate_beam
from .channels import SiChannel
from .errors import (
    ConfigurationError,
    GridParseError,
    MeasurementUnavailableError,
    UnsupportedOperationError,
)
from .linkmetrics import db_to_linear

GRID_HEADER = "theta_tx_deg,phi_tx_deg,theta_rx_deg,phi_rx_deg,inr_db"

# Cache keys quantize directions to 1e-6 degrees so lattice-generated values
# collide reliably.
_Q = 1_000_000


def _qkey(d: SteeringDirection) -> tuple[int, int]:
    return (round(d.azimuth_deg * _Q), round(d.elevation_deg * _Q))


def _pair_key(d_tx: SteeringDirection, d_rx: SteeringDirection):
    return _qkey(d_tx) + _qkey(d_rx)


def _fmt(x: float) -> str:
    # shortest representation that round-trips exactly through float()
    return repr(float(x))


@dataclass
class OracleStats:
    queries_total: int = 0
    queries_served_from_cache: int = 0


@dataclass(frozen=True)
class InrGrid:
    """Measured INR (dB) keyed by (tx direction, rx direction)."""

    entries: dict[tuple[SteeringDirection, SteeringDirection], float]
    resolution_deg: tuple[float, float] = (1.0, 1.0)
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        res_t, res_p = self.resolution_deg
        if res_t <= 0 or res_p <= 0:
            raise ConfigurationError("grid resolution must be positive")
        for (d_tx, d_rx), inr_db in self.entries.items():
            if not math.isfinite(inr_db):
                raise ConfigurationError(f"non-finite INR for pair ({d_tx}, {d_rx})")
            for d in (d_tx, d_rx):
                for value, res in (
                    (d.azimuth_deg, res_t),
                    (d.elevation_deg, res_p),
                ):
                    if abs(value / res - round(value / res)) > 1e-6:
                        raise ConfigurationError(
                            f"direction value {value} off the {res} deg lattice"
                        )

    def __len__(self) -> int:
        return len(self.entries)


class SyntheticSiOracle:
    """Computes INR on demand from a coupling channel, caching per pair.

    The cached quantity is the beam-pair coupling (plus the optional
    per-pair measurement perturbation), so changing the reference level
    shifts every reported INR by exactly that amount in dB.  Concurrent
    reads are safe; cache insertion is atomic per key.
    """

    def __init__(
        self,
        tx_geometry: UpaGeometry,
        rx_geometry: UpaGeometry,
        si: SiChannel,
        si_ref_inr_db: float = 0.0,
        noise_sigma_db: float = 0.0,
        clip_ceiling_db: float | None = None,
        seed: int = 0,
    ):
        self.tx_geometry = tx_geometry
        self.rx_geometry = rx_geometry
        self.si = si
        self.si_ref_inr_db = si_ref_inr_db
        self.noise_sigma_db = noise_sigma_db
        self.clip_ceiling_db = clip_ceiling_db
        self.seed = seed
        self.stats = OracleStats()
        self._lock = threading.Lock()
        self._pair_db: dict[tuple, float] = {}
        self._tx_hf: dict[tuple, np.ndarray] = {}
        self._rx_w: dict[tuple, np.ndarray] = {}

    def _hf(self, d_tx: SteeringDirection) -> np.ndarray:
        key = _qkey(d_tx)
        hf = self._tx_hf.get(key)
        if hf is None:
            f = conjugate_beam(self.tx_geometry, d_tx).weights
            hf = self.si.matrix @ f
            with self._lock:
                self._tx_hf.setdefault(key, hf)
        return hf

    def _w(self, d_rx: SteeringDirection) -> np.ndarray:
        key = _qkey(d_rx)
        w = self._rx_w.get(key)
        if w is None:
            w = conjugate_beam(self.rx_geometry, d_rx).weights
            with self._lock:
                self._rx_w.setdefault(key, w)
        return w

    def _coupling_db(self, key: tuple, d_tx: SteeringDirection, d_rx: SteeringDirection) -> float:
        na = self.tx_geometry.num_elements
        coupling = abs(np.vdot(self._w(d_rx), self._hf(d_tx))) ** 2 / (na * na)
        value = -math.inf if coupling == 0.0 else 10.0 * math.log10(coupling)
        if self.noise_sigma_db > 0.0 and math.isfinite(value):
            rng = np.random.default_rng((self.seed,) + tuple(k & 0xFFFFFFFF for k in key))
            value += self.noise_sigma_db * rng.standard_normal()
        return value

    def query_inr_db(self, d_tx: SteeringDirection, d_rx: SteeringDirection) -> float:
        key = _pair_key(d_tx, d_rx)
        with self._lock:
            self.stats.queries_total += 1
            cached = self._pair_db.get(key)
            if cached is not None:
                self.stats.queries_served_from_cache += 1
        if cached is None:
            cached = self._coupling_db(key, d_tx, d_rx)
            with self._lock:
                cached = self._pair_db.setdefault(key, cached)
        inr_db = self.si_ref_inr_db + cached
        if self.clip_ceiling_db is not None:
            inr_db = min(inr_db, self.clip_ceiling_db)
        return inr_db

    def query_inr(self, d_tx: SteeringDirection, d_rx: SteeringDirection) -> float:
        return db_to_linear(self.query_inr_db(d_tx, d_rx))

    def coupling_matrix_db(self, codebook_tx: Codebook, codebook_rx: Codebook) -> np.ndarray:
        """Noiseless coupling (dB) for all codebook pairs, shape (N_rx, N_tx)."""
        na = self.tx_geometry.num_elements
        f_mat = codebook_tx.beam_matrix
        w_mat = codebook_rx.beam_matrix
        m = w_mat.conj().T @ (self.si.matrix @ f_mat)
        with np.errstate(divide="ignore"):
            return 10.0 * np.log10(np.abs(m) ** 2 / (na * na))


class FileSiOracle:
    """Serves INR queries from an ingested measurement grid."""

    def __init__(self, grid: InrGrid):
        self.grid = grid
        self.stats = OracleStats()
        self._lock = threading.Lock()
        self._by_key = {
            _pair_key(d_tx, d_rx): inr_db
            for (d_tx, d_rx), inr_db in grid.entries.items()
        }
        self._seen: set[tuple] = set()

    def query_inr_db(self, d_tx: SteeringDirection, d_rx: SteeringDirection) -> float:
        key = _pair_key(d_tx, d_rx)
        with self._lock:
            self.stats.queries_total += 1
            if key in self._seen:
                self.stats.queries_served_from_cache += 1
            else:
                self._seen.add(key)
        try:
            return self._by_key[key]
        except KeyError:
            raise MeasurementUnavailableError(
                f"no measurement for pair ({d_tx}, {d_rx})"
            ) from None

    def query_inr(self, d_tx: SteeringDirection, d_rx: SteeringDirection) -> float:
        return db_to_linear(self.query_inr_db(d_tx, d_rx))


def calibrate_reference(
    oracle,
    codebook_tx: Codebook,
    codebook_rx: Codebook,
    target_median_inr_db: float,
) -> float:
    """Reference level making the median INR over all codebook pairs hit the target.

    Closed form: target minus the median coupling in dB.
    """
    if not math.isfinite(target_median_inr_db):
        raise ConfigurationError("calibration target must be finite")
    if len(codebook_tx) == 0 or len(codebook_rx) == 0:
        raise ConfigurationError("empty codebook")
    if not isinstance(oracle, SyntheticSiOracle):
        raise UnsupportedOperationError("calibration requires a synthetic oracle")
    coupling_db = oracle.coupling_matrix_db(codebook_tx, codebook_rx)
    return target_median_inr_db - float(np.median(coupling_db))


def export_grid(
    oracle,
    pairs,
    path,
    resolution_deg: tuple[float, float] = (1.0, 1.0),
    metadata: dict[str, str] | None = None,
) -> None:
    """Write queried INR values for the given direction pairs as CSV."""
    meta = dict(metadata or {})
    meta.setdefault("resolution_theta_deg", _fmt(resolution_deg[0]))
    meta.setdefault("resolution_phi_deg", _fmt(resolution_deg[1]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in meta.items():
            fh.write(f"# {key}={value}\n")
        fh.write(GRID_HEADER + "\n")
        for d_tx, d_rx in pairs:
            inr_db = oracle.query_inr_db(d_tx, d_rx)
            fh.write(
                ",".join(
                    _fmt(v)
                    for v in (
                        d_tx.azimuth_deg,
                        d_tx.elevation_deg,
                        d_rx.azimuth_deg,
                        d_rx.elevation_deg,
                        inr_db,
                    )
                )
                + "\n"
            )


def import_grid(path) -> FileSiOracle:
    """Read a grid file back into a file-backed oracle."""
    entries: dict[tuple[SteeringDirection, SteeringDirection], float] = {}
    metadata: dict[str, str] = {}
    header_seen = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if not header_seen:
                if line != GRID_HEADER:
                    raise GridParseError(
                        f"expected header {GRID_HEADER!r}, got {line!r}", lineno
                    )
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != 5:
                raise GridParseError(f"expected 5 fields, got {len(parts)}", lineno)
            try:
                az_t, el_t, az_r, el_r, inr_db = (float(p) for p in parts)
            except ValueError as exc:
                raise GridParseError(str(exc), lineno) from None
            key = (SteeringDirection(az_t, el_t), SteeringDirection(az_r, el_r))
            if key in entries:
                raise GridParseError(f"duplicate pair {key}", lineno)
            entries[key] = inr_db
    if not header_seen:
        raise GridParseError("missing header line")
    resolution = (
        float(metadata.get("resolution_theta_deg", 1.0)),
        float(metadata.get("resolution_phi_deg", 1.0)),
    )
    return FileSiOracle(InrGrid(entries=entries, resolution_deg=resolution, metadata=metadata))
