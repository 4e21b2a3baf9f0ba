"""Availability models for virtualized, disaggregated RAN deployments."""

__version__ = "0.1.0"

from .app import AppAvailability, app_availability, app_model_as_ctmc, app_single_availability
from .cluster import ClusterReport, cluster_availability
from .ctmc import CtmcModel, StationaryDistribution, build_generator, solve_direct, solve_embedded_dtmc
from .network import (
    NetworkScenario,
    OutagePmf,
    cell_outage,
    expected_unavailable,
    pmf_centralized,
    pmf_distributed,
)
from .platform_model import (
    PlatformResult,
    PlatformState,
    PlatformVariant,
    build_active_active,
    build_active_passive,
    platform_availability,
)
from .sim import SimConfig, SimResult, simulate_cluster, simulate_platform
from .units import (
    Duration,
    Mode,
    RateParams,
    ReplicationSpec,
    ValidationError,
    afr_to_mttf,
    nines,
    parse_duration,
    to_rate,
)
