"""Rate simulator and optimizer for two-path virtual full-duplex relaying
with improper Gaussian signaling at the relays."""

from .rates import (
    HopBranch,
    LinkGains,
    RateBreakdown,
    SignalConfig,
    SystemParams,
    first_hop_rate,
    improper_link_rate,
    path_rate,
    piecewise_path_min,
    psi,
    psi_coeffs,
    second_hop_rate,
    total_rate,
)
from .channels import (
    FadingSpec,
    GeometrySpec,
    MeanGains,
    db_to_linear,
    derive_seed,
    draw_geometric_gains,
    draw_rayleigh_gains,
    geometry_to_mean_gains,
    substream,
)
from .optimizer import (
    STRATEGIES,
    CircularityMode,
    GridSpec,
    OptResult,
    Strategy,
    TauMode,
    candidate_grid,
    grid_search,
)
from .montecarlo import (
    SWEEP_AXES,
    AggregateStats,
    RunConfig,
    SimulationError,
    StrategyStats,
    run_point,
    run_sweep,
)
from .scenario import KINDS, ScenarioError, ScenarioFile, load_scenario, parse_scenario

__version__ = "0.1.0"
