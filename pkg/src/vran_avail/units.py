"""Durations, rates and replication settings.

Everything is converted to seconds internally. Calendar units are fixed
multiples: a month is 30 days and a year is 365 days.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields
from enum import Enum
from typing import Optional, Union

SECOND = 1.0
MINUTE = 60.0
HOUR = 3600.0
DAY = 86400.0
MONTH = 30 * DAY
YEAR = 365 * DAY

UNIT_SECONDS = {
    "second": SECOND,
    "minute": MINUTE,
    "hour": HOUR,
    "day": DAY,
    "month": MONTH,
    "year": YEAR,
}

# accepted spellings in duration strings
_UNIT_ALIASES = {
    "s": "second", "sec": "second", "secs": "second", "second": "second", "seconds": "second",
    "min": "minute", "mins": "minute", "minute": "minute", "minutes": "minute",
    "h": "hour", "hour": "hour", "hours": "hour",
    "d": "day", "day": "day", "days": "day",
    "month": "month", "months": "month",
    "y": "year", "year": "year", "years": "year",
}

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_DURATION_RE = re.compile(rf"^\s*({_NUMBER})\s*([A-Za-z]+)\s*$")
_PERCENT_RE = re.compile(rf"^\s*({_NUMBER})\s*%\s*$")
_NEVER = {"inf", "never"}

MAX_NINES = 12


class ValidationError(ValueError):
    """Raised for malformed or out-of-range model parameters."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


@dataclass(frozen=True)
class Duration:
    """A non-negative time span.

    ``value`` may be ``math.inf`` to express a failure process that never
    fires (its rate is then 0).
    """

    value: float
    unit: str = "second"

    def __post_init__(self):
        if self.unit not in UNIT_SECONDS:
            raise ValidationError(f"unknown unit {self.unit!r}")
        if math.isnan(self.value) or self.value < 0:
            raise ValidationError(f"duration must be >= 0, got {self.value!r}")

    @property
    def seconds(self) -> float:
        return self.value * UNIT_SECONDS[self.unit]

    @property
    def is_never(self) -> bool:
        return math.isinf(self.value)

    @classmethod
    def of(cls, value: float, unit: str) -> "Duration":
        return cls(float(value), _UNIT_ALIASES.get(unit, unit))

    def canonical(self) -> str:
        """Seconds-based string that parses back to the same number of seconds."""
        if self.is_never:
            return "inf"
        return f"{self.seconds!r}s"

    def __str__(self) -> str:
        if self.is_never:
            return "inf"
        return f"{self.value:g} {self.unit}{'s' if self.value != 1 else ''}"


def parse_duration(text: Union[str, int, float], allow_afr: bool = False,
                   allow_never: bool = False) -> Duration:
    """Parse ``"<number><unit>"``; bare numbers are seconds.

    With ``allow_afr`` a ``"<number>%"`` annualized failure rate is also
    accepted and converted to an MTTF. With ``allow_never`` the strings
    ``"inf"``/``"never"`` give an infinite duration.
    """
    if isinstance(text, bool):
        raise ValidationError(f"not a duration: {text!r}")
    if isinstance(text, (int, float)):
        return Duration(float(text))
    s = str(text).strip()
    if s.lower() in _NEVER:
        if not allow_never:
            raise ValidationError(f"infinite duration not allowed here: {text!r}")
        return Duration(math.inf)
    m = _PERCENT_RE.match(s)
    if m:
        if not allow_afr:
            raise ValidationError(f"annualized failure rate not allowed here: {text!r}")
        return afr_to_mttf(float(m.group(1)) / 100.0)
    m = _DURATION_RE.match(s)
    if not m:
        raise ValidationError(f"cannot parse duration {text!r}")
    unit = _UNIT_ALIASES.get(m.group(2).lower())
    if unit is None:
        raise ValidationError(f"unknown unit {m.group(2)!r} in {text!r}")
    return Duration(float(m.group(1)), unit)


def to_rate(d: Duration) -> float:
    """Events per second for a mean duration ``d``."""
    if d.is_never:
        return 0.0
    if d.seconds <= 0:
        raise ValidationError(f"duration must be > 0 to define a rate, got {d}")
    return 1.0 / d.seconds


def from_rate(rate: float) -> Duration:
    if not rate > 0 or math.isinf(rate):
        raise ValidationError(f"rate must be positive and finite, got {rate!r}")
    return Duration(1.0 / rate)


def afr_to_mttf(afr: float) -> Duration:
    """MTTF = 1/AFR years (exponential approximation)."""
    if not 0 < afr < 1:
        raise ValidationError(f"annualized failure rate must be in (0, 1), got {afr!r}")
    return Duration(1.0 / afr, "year")


def mttf_to_afr(d: Duration) -> float:
    return YEAR / d.seconds


def nines(availability: float) -> int:
    """Number of leading nines: k such that A lies in [1 - 10^-k, 1 - 10^-(k+1)).

    Capped at 12. The threshold ``1 - 10**-k`` is formed in floating point so
    that ``nines(1 - 10**-k) == k`` holds exactly.
    """
    if math.isnan(availability) or not 0.0 <= availability <= 1.0:
        raise ValidationError(f"availability must be in [0, 1], got {availability!r}")
    if 1.0 - availability < 1e-12:
        return MAX_NINES
    k = 0
    while k < MAX_NINES and availability >= 1.0 - 10.0 ** -(k + 1):
        k += 1
    return k


class Mode(str, Enum):
    ACTIVE_ACTIVE = "active_active"
    ACTIVE_PASSIVE = "active_passive"


@dataclass(frozen=True)
class RateParams:
    """Mean times for every failure, repair and failover process.

    ``mttf_*`` may be infinite (the process never fails). Failover means are
    only needed for active-passive platforms.
    """

    mttf_s: Duration
    mttr_s: Duration
    mttf_o: Duration
    mttr_o: Duration
    mttf_h: Duration
    mttr_h: Duration
    mtfo_o: Optional[Duration] = None
    mtfo_h: Optional[Duration] = None

    def __post_init__(self):
        for f in fields(self):
            d = getattr(self, f.name)
            if d is None:
                continue
            if not isinstance(d, Duration):
                raise ValidationError("expected a Duration", f.name)
            if d.seconds <= 0:
                raise ValidationError("must be strictly positive", f.name)
            if d.is_never and not f.name.startswith("mttf"):
                raise ValidationError("only failure times may be infinite", f.name)

    @classmethod
    def from_seconds(cls, **kw: Optional[float]) -> "RateParams":
        return cls(**{k: None if v is None else Duration(float(v)) for k, v in kw.items()})

    @classmethod
    def with_single_mtfo(cls, mtfo: Duration, **kw: Duration) -> "RateParams":
        return cls(mtfo_o=mtfo, mtfo_h=mtfo, **kw)

    @property
    def app_fail_rate(self) -> float:
        return to_rate(self.mttf_s)

    @property
    def app_repair_rate(self) -> float:
        return to_rate(self.mttr_s)

    @property
    def os_fail_rate(self) -> float:
        return to_rate(self.mttf_o)

    @property
    def os_repair_rate(self) -> float:
        return to_rate(self.mttr_o)

    @property
    def hw_fail_rate(self) -> float:
        return to_rate(self.mttf_h)

    @property
    def hw_repair_rate(self) -> float:
        return to_rate(self.mttr_h)

    @property
    def os_failover_rate(self) -> float:
        if self.mtfo_o is None:
            raise ValidationError("required for active-passive platforms", "mtfo_o")
        return to_rate(self.mtfo_o)

    @property
    def hw_failover_rate(self) -> float:
        if self.mtfo_h is None:
            raise ValidationError("required for active-passive platforms", "mtfo_h")
        return to_rate(self.mtfo_h)

    def canonical(self) -> dict[str, Optional[float]]:
        """Field name -> seconds (``inf`` for never, ``None`` if unset)."""
        return {f.name: (None if getattr(self, f.name) is None else getattr(self, f.name).seconds)
                for f in fields(self)}


@dataclass(frozen=True)
class ReplicationSpec:
    n_h: int = 1
    n_s: int = 1
    mode: Mode = Mode.ACTIVE_ACTIVE

    def __post_init__(self):
        for name in ("n_h", "n_s"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValidationError(f"must be a positive integer, got {v!r}", name)
        object.__setattr__(self, "mode", Mode(self.mode))
