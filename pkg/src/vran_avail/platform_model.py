"""Replicated platform (COTS server + OS/CaaS) availability chains.

A state ``a^b`` has ``a`` functional replicas, ``b`` replicas down with a
temporary (OS/CaaS) failure and ``n_h - a - b`` replicas down with a
permanent (hardware) failure. Active-passive platforms add failover states
``a_o^b`` / ``a_h^b``: the serving replica just failed (temporarily or
permanently) and a standby is being promoted. The platform is down in every
failover state and in every state with ``a == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .ctmc import SOLVERS, CtmcModel, StationaryDistribution, build_generator
from .units import Mode, RateParams, ValidationError


class Kind(str, Enum):
    NORMAL = "normal"
    FAILOVER_TEMP = "failover_temp"
    FAILOVER_PERM = "failover_perm"


@dataclass(frozen=True, order=True)
class PlatformState:
    a: int
    b: int
    kind: Kind = Kind.NORMAL

    @property
    def is_failover(self) -> bool:
        return self.kind is not Kind.NORMAL

    @property
    def is_down(self) -> bool:
        return self.a == 0 or self.is_failover

    def permanent(self, n_h: int) -> int:
        return n_h - self.a - self.b

    def __str__(self) -> str:
        sub = {Kind.NORMAL: "", Kind.FAILOVER_TEMP: "_o", Kind.FAILOVER_PERM: "_h"}[self.kind]
        return f"{self.a}{sub}^{self.b}"


@dataclass(frozen=True)
class PlatformVariant:
    """Switches for ambiguous corners of the active-passive chain.

    ``temp_failed_hw_failures``: temporarily failed replicas can also suffer a
    hardware failure (rate b * lambda_h). Disabling it is the ``drop-eq5``
    sensitivity variant.

    ``failover_temp_to_permanent``: reproduce the printed target of the
    temporary-failover exit, ``a_o^b -> (a-1)^b``, which books the failed
    serving replica as permanently failed. By default it lands in
    ``(a-1)^(b+1)`` so the replica recovers at the OS/CaaS repair rate.
    """

    temp_failed_hw_failures: bool = True
    failover_temp_to_permanent: bool = False


DEFAULT_VARIANT = PlatformVariant()

VARIANT_FLAGS = {
    "drop-eq5": {"temp_failed_hw_failures": False},
    "failover-to-permanent": {"failover_temp_to_permanent": True},
}


def variant_from_flags(flags) -> PlatformVariant:
    kw = {}
    for flag in flags or ():
        if flag not in VARIANT_FLAGS:
            raise ValidationError(f"unknown model variant {flag!r}; "
                                  f"choose from {sorted(VARIANT_FLAGS)}", "model_variant")
        kw.update(VARIANT_FLAGS[flag])
    return PlatformVariant(**kw)


@dataclass(frozen=True)
class PlatformResult:
    mode: Mode
    n_h: int
    availability: float
    outage_probability: float
    stationary: StationaryDistribution
    state_count: int
    model: CtmcModel


def _check_n_h(n_h) -> int:
    if isinstance(n_h, bool) or not isinstance(n_h, int) or n_h < 1:
        raise ValidationError(f"must be a positive integer, got {n_h!r}", "n_h")
    return n_h


def active_active_states(n_h: int) -> list[PlatformState]:
    return [PlatformState(a, b) for a in range(n_h, -1, -1) for b in range(n_h - a + 1)]


def failover_states(n_h: int) -> list[PlatformState]:
    return [PlatformState(a, b, kind)
            for kind in (Kind.FAILOVER_TEMP, Kind.FAILOVER_PERM)
            for a in range(n_h, 1, -1) for b in range(n_h - a + 1)]


def _shared_transitions(s: PlatformState, n_h: int, p: RateParams, variant: PlatformVariant):
    """Temp repair, hardware failure of temp-failed replicas, site hardware repair."""
    a, b = s.a, s.b
    if b > 0:
        yield s, PlatformState(a + 1, b - 1), b * p.os_repair_rate
        if variant.temp_failed_hw_failures:
            yield s, PlatformState(a, b - 1), b * p.hw_fail_rate
    if a + b < n_h:
        # one crew visit fixes every permanently failed replica
        yield s, PlatformState(n_h - b, b), p.hw_repair_rate


def _active_active_transitions(n_h: int, p: RateParams, variant=DEFAULT_VARIANT):
    for s in active_active_states(n_h):
        a, b = s.a, s.b
        if a > 0:
            yield s, PlatformState(a - 1, b + 1), a * p.os_fail_rate
            yield s, PlatformState(a - 1, b), a * p.hw_fail_rate
        yield from _shared_transitions(s, n_h, p, variant)


def _active_passive_transitions(n_h: int, p: RateParams, variant: PlatformVariant):
    lo, lh = p.os_fail_rate, p.hw_fail_rate
    go, gh = p.os_failover_rate, p.hw_failover_rate
    for s in active_active_states(n_h):
        a, b = s.a, s.b
        if a > 0:
            # standby failures, or the lone serving replica when a == 1
            standby = max(a - 1, 1)
            yield s, PlatformState(a - 1, b + 1), standby * lo
            yield s, PlatformState(a - 1, b), standby * lh
        if a >= 2:
            yield s, PlatformState(a, b, Kind.FAILOVER_TEMP), lo
            yield s, PlatformState(a, b, Kind.FAILOVER_PERM), lh
        yield from _shared_transitions(s, n_h, p, variant)
    temp_target = 0 if variant.failover_temp_to_permanent else 1
    for s in failover_states(n_h):
        if s.kind is Kind.FAILOVER_TEMP:
            yield s, PlatformState(s.a - 1, s.b + temp_target), go
        else:
            yield s, PlatformState(s.a - 1, s.b), gh


def _assemble(states: list[PlatformState], transitions, n_h: int) -> CtmcModel:
    edges = [(src, dst, r) for src, dst, r in transitions if r > 0]
    # zero failure rates leave part of the space unreachable; keep the class of all-up
    start = PlatformState(n_h, 0)
    adj: dict = {}
    for src, dst, _ in edges:
        adj.setdefault(src, []).append(dst)
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj.get(stack.pop(), ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    kept = [s for s in states if s in seen]
    return build_generator(kept, [e for e in edges if e[0] in seen])


def build_active_active(params: RateParams, n_h: int) -> CtmcModel:
    n_h = _check_n_h(n_h)
    return _assemble(active_active_states(n_h),
                     _active_active_transitions(n_h, params), n_h)


def build_active_passive(params: RateParams, n_h: int,
                         variant: PlatformVariant = DEFAULT_VARIANT) -> CtmcModel:
    n_h = _check_n_h(n_h)
    if n_h == 1:
        # no standby to fail over to; identical to the single active replica
        return build_active_active(params, 1)
    states = active_active_states(n_h) + failover_states(n_h)
    return _assemble(states, _active_passive_transitions(n_h, params, variant), n_h)


def build_platform(params: RateParams, n_h: int, mode: Mode,
                   variant: PlatformVariant = DEFAULT_VARIANT) -> CtmcModel:
    if Mode(mode) is Mode.ACTIVE_ACTIVE:
        return build_active_active(params, n_h)
    return build_active_passive(params, n_h, variant)


def platform_availability(params: RateParams, n_h: int, mode: Mode,
                          variant: PlatformVariant = DEFAULT_VARIANT,
                          solver: str = "direct") -> PlatformResult:
    mode = Mode(mode)
    model = build_platform(params, n_h, mode, variant)
    pi = SOLVERS[solver](model)
    outage = pi.mass(lambda s: s.is_down)
    return PlatformResult(mode, n_h, 1.0 - outage, outage, pi, model.size, model)
