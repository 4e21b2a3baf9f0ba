"""Cluster availability: platform and application factors multiplied together."""

from __future__ import annotations

from dataclasses import dataclass

from .app import AppAvailability, app_availability
from .platform_model import DEFAULT_VARIANT, PlatformResult, PlatformVariant, platform_availability
from .units import Mode, RateParams, ReplicationSpec, nines


@dataclass(frozen=True)
class ClusterReport:
    mode: Mode
    n_h: int
    n_s: int
    f_platform: float
    f_app: float
    f_cluster: float
    app_replicas: int
    platform: PlatformResult
    app: AppAvailability

    @property
    def outage_platform(self) -> float:
        return self.platform.outage_probability

    @property
    def outage_app(self) -> float:
        return self.app.outage_probability

    @property
    def outage_cluster(self) -> float:
        return 1.0 - self.f_cluster

    @property
    def nines_platform(self) -> int:
        return nines(self.f_platform)

    @property
    def nines_app(self) -> int:
        return nines(self.f_app)

    @property
    def nines_cluster(self) -> int:
        return nines(self.f_cluster)

    @property
    def nines_triple(self) -> tuple[int, int, int]:
        return self.nines_cluster, self.nines_platform, self.nines_app

    @property
    def state_count(self) -> int:
        return self.platform.state_count


def effective_app_replicas(spec: ReplicationSpec) -> int:
    """Active-active platforms pool the replicas of every platform; active-passive only the serving one."""
    if spec.mode is Mode.ACTIVE_ACTIVE:
        return spec.n_s * spec.n_h
    return spec.n_s


def cluster_availability(params: RateParams, spec: ReplicationSpec,
                         variant: PlatformVariant = DEFAULT_VARIANT,
                         solver: str = "direct") -> ClusterReport:
    plat = platform_availability(params, spec.n_h, spec.mode, variant, solver)
    n_app = effective_app_replicas(spec)
    app = app_availability(params, n_app)
    return ClusterReport(
        mode=spec.mode,
        n_h=spec.n_h,
        n_s=spec.n_s,
        f_platform=plat.availability,
        f_app=app.availability,
        f_cluster=plat.availability * app.availability,
        app_replicas=n_app,
        platform=plat,
        app=app,
    )
