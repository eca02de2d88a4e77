"""Link-level simulator for joint beam selection in full-duplex mmWave radios."""

from .array import (
    BeamWeights,
    Codebook,
    SteeringDirection,
    UpaGeometry,
    array_response,
    build_codebook,
    codebook_preset,
    conjugate_beam,
)
from .channels import LosChannel, SiChannel, los_channel, synthesize_si_channel
from .config import RunConfig, load_config
from .errors import (
    ConfigurationError,
    DimensionError,
    DirectionError,
    GeometryError,
    GridParseError,
    MeasurementUnavailableError,
    SteersimError,
    UnsupportedOperationError,
)
from .linkmetrics import (
    LinkBudget,
    LinkRates,
    db_to_linear,
    inr_from_si,
    linear_to_db,
    sinr,
    snr_with_beam,
    spectral_efficiency,
    strategy_rates,
)
from .alignment import AlignmentResult, align
from .si_oracle import (
    FileSiOracle,
    InrGrid,
    SyntheticSiOracle,
    calibrate_reference,
    export_grid,
    import_grid,
)
from .steer import (
    NeighborhoodSpec,
    SteerConfig,
    SteerSolution,
    load_lookup,
    precompute_lookup,
    save_lookup,
    solve_steer_exhaustive,
    solve_steer_incremental,
    sort_pairs_by_deviation,
)
from .simharness import (
    DropResult,
    Platform,
    Scenario,
    empirical_cdf,
    run_scenario,
    snr_grid_sweep,
    sweep_neighborhood,
    sweep_target,
    write_results_csv,
)
from .presets import build_platform, build_scenario, default_platform, default_scenario

__version__ = "0.1.0"
