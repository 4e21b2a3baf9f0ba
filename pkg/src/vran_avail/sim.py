"""Replica-level Monte Carlo simulation of platform and cluster availability.

This is an independent check on the analytic chains: it tracks the status
of every server replica and every application replica, races their
exponential clocks, and measures the fraction of time the service is up.
Nothing here reads or samples a generator matrix.

Randomness comes from numpy's ``PCG64`` bit generator seeded directly with
the configured seed, so a given seed and config always produce the same
result.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .cluster import effective_app_replicas
from .units import Mode, RateParams, ReplicationSpec, ValidationError

UP, TEMP, PERM = 0, 1, 2
MIN_EXPECTED_EVENTS = 100
_CHUNK = 1 << 14


@dataclass(frozen=True)
class SimConfig:
    params: RateParams
    spec: ReplicationSpec
    horizon: float
    seed: int = 0
    batches: int = 30

    def __post_init__(self):
        if not (self.horizon > 0 and math.isfinite(self.horizon)):
            raise ValidationError(f"must be positive and finite, got {self.horizon!r}", "horizon")
        if isinstance(self.batches, bool) or not isinstance(self.batches, int) or self.batches < 10:
            raise ValidationError(f"need at least 10 batches, got {self.batches!r}", "batches")
        if not 0 <= int(self.seed) < 2**64:
            raise ValidationError(f"seed must fit in 64 bits, got {self.seed!r}", "seed")


@dataclass(frozen=True)
class SimResult:
    availability_estimate: float
    std_error: float
    batch_means: np.ndarray
    event_count: int
    event_counts: dict = field(default_factory=dict)
    short_horizon: bool = False
    horizon: float = 0.0

    def z_score(self, analytic: float) -> float:
        diff = self.availability_estimate - analytic
        if self.std_error == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.std_error


class _Stream:
    """Buffered exponential and uniform draws from one PCG64 generator."""

    def __init__(self, seed: int):
        self._rng = np.random.Generator(np.random.PCG64(int(seed)))
        self._exp = self._uni = ()
        self._i = self._j = 0

    def exponential(self) -> float:
        if self._i == len(self._exp):
            self._exp = self._rng.standard_exponential(_CHUNK).tolist()
            self._i = 0
        self._i += 1
        return self._exp[self._i - 1]

    def uniform(self) -> float:
        if self._j == len(self._uni):
            self._uni = self._rng.random(_CHUNK).tolist()
            self._j = 0
        self._j += 1
        return self._uni[self._j - 1]

    def pick(self, items: list):
        return items[int(self.uniform() * len(items))]


class _Downtime:
    """Accumulates down time into equal-width batches.

    Down time rather than up time is summed so that tiny outage fractions keep
    full precision and an outage-free batch is exactly 1.
    """

    def __init__(self, horizon: float, batches: int):
        self.width = horizon / batches
        self.down = [0.0] * batches

    def add(self, t0: float, t1: float) -> None:
        n = len(self.down)
        k = min(int(t0 / self.width), n - 1)
        while t0 < t1 and k < n:
            end = t1 if k == n - 1 else min(t1, (k + 1) * self.width)
            self.down[k] += end - t0
            t0 = end
            k += 1


def _run(cfg: SimConfig, with_apps: bool) -> SimResult:
    p, spec = cfg.params, cfg.spec
    passive = spec.mode is Mode.ACTIVE_PASSIVE and spec.n_h > 1
    lo, lh, mo, mh = p.os_fail_rate, p.hw_fail_rate, p.os_repair_rate, p.hw_repair_rate
    go = p.os_failover_rate if passive else 0.0
    gh = p.hw_failover_rate if passive else 0.0
    ls, ms = (p.app_fail_rate, p.app_repair_rate) if with_apps else (0.0, 0.0)
    n_app = effective_app_replicas(spec) if with_apps else 0

    status = [UP] * spec.n_h
    active = 0  # serving replica in active-passive mode
    failover = None  # (failed replica, status it lands in) while a standby is promoted
    apps = [True] * n_app
    rng = _Stream(cfg.seed)
    clock = _Downtime(cfg.horizon, cfg.batches)
    counts: Counter = Counter()

    def platform_up() -> bool:
        if failover is not None:
            return False
        if passive:
            return active is not None and status[active] == UP
        return UP in status

    def service_up() -> bool:
        return platform_up() and (n_app == 0 or any(apps))

    def fail_replica(i: int, to: int, kind: str) -> None:
        nonlocal active, failover
        if passive and i == active:
            if status.count(UP) >= 2:
                failover = (i, to)
                counts[f"{kind}_fail"] += 1
                return
            active = None
        status[i] = to
        counts[f"{kind}_fail"] += 1

    def restore(i: int) -> None:
        nonlocal active
        status[i] = UP
        if passive and active is None:
            active = i

    t = 0.0
    horizon = cfg.horizon
    while True:
        if failover is not None:
            platform_events = [(go if failover[1] == TEMP else gh, "failover_done")]
        else:
            up = status.count(UP)
            temp = status.count(TEMP)
            platform_events = [
                (up * lo, "os_fail"),
                (up * lh, "hw_fail"),
                (temp * mo, "os_repair"),
                (temp * lh, "hw_fail_temp"),
                (mh if PERM in status else 0.0, "hw_repair"),
            ]
        n_up_apps = sum(apps)
        events = platform_events + [(n_up_apps * ls, "app_fail"), ((n_app - n_up_apps) * ms, "app_repair")]
        total = sum(r for r, _ in events)

        is_up = service_up()
        dt = rng.exponential() / total if total > 0 else math.inf
        t_next = t + dt
        if t_next >= horizon:
            if not is_up:
                clock.add(t, horizon)
            break
        if not is_up:
            clock.add(t, t_next)
        t = t_next

        u = rng.uniform() * total
        for rate, name in events:
            if u < rate:
                break
            u -= rate
        # float round-off can leave u just past the last positive rate
        if rate == 0:
            name = next(n for r, n in reversed(events) if r > 0)

        if name == "failover_done":
            i, to = failover
            failover = None
            status[i] = to
            active = rng.pick([j for j, s in enumerate(status) if s == UP])
            counts["failover"] += 1
        elif name == "os_fail":
            fail_replica(rng.pick([j for j, s in enumerate(status) if s == UP]), TEMP, "os")
        elif name == "hw_fail":
            fail_replica(rng.pick([j for j, s in enumerate(status) if s == UP]), PERM, "hw")
        elif name == "os_repair":
            restore(rng.pick([j for j, s in enumerate(status) if s == TEMP]))
            counts["os_repair"] += 1
        elif name == "hw_fail_temp":
            status[rng.pick([j for j, s in enumerate(status) if s == TEMP])] = PERM
            counts["hw_fail"] += 1
        elif name == "hw_repair":
            # one crew visit restores every permanently failed replica
            for j, s in enumerate(status):
                if s == PERM:
                    restore(j)
            counts["hw_repair"] += 1
        elif name == "app_fail":
            apps[rng.pick([j for j, a in enumerate(apps) if a])] = False
            counts["app_fail"] += 1
        else:
            apps[rng.pick([j for j, a in enumerate(apps) if not a])] = True
            counts["app_repair"] += 1

    down_frac = np.array(clock.down) / clock.width
    estimate = 1.0 - math.fsum(clock.down) / horizon
    std_error = float(np.std(down_frac, ddof=1) / math.sqrt(len(down_frac)))
    expected = horizon * (spec.n_h * (lo + lh) + n_app * ls)
    return SimResult(
        availability_estimate=min(max(estimate, 0.0), 1.0),
        std_error=std_error,
        batch_means=1.0 - down_frac,
        event_count=sum(counts.values()),
        event_counts=dict(counts),
        short_horizon=expected < MIN_EXPECTED_EVENTS,
        horizon=horizon,
    )


def simulate_platform(cfg: SimConfig) -> SimResult:
    return _run(cfg, with_apps=False)


def simulate_cluster(cfg: SimConfig) -> SimResult:
    """Platform plus independent application replicas; up iff platform up and one app up."""
    return _run(cfg, with_apps=True)
