"""JSON config ingestion for the command line tools.

A model config is a flat JSON object::

    {
      "mode": "active_passive",     # or "active_active" (default)
      "n_h": 2, "n_s": 2,           # default 1 each
      "mttf_h": "10years",          # or an annualized failure rate, e.g. "3%"
      "mttr_h": "10h",
      "mttf_o": "10months", "mttr_o": "15min",
      "mttf_s": "2months",  "mttr_s": "5min",
      "mtfo": "10s"                 # or mtfo_o / mtfo_h separately
    }

Durations are ``<number><unit>`` with optional whitespace in between. Units:
``s``/``sec``/``seconds``, ``min``/``minutes``, ``h``/``hours``,
``d``/``days``, ``months``, ``y``/``years`` (singular forms too). A month is
30 days and a year 365 days. A bare JSON number means seconds. Failure times
(``mttf_*``) also accept ``"inf"`` or ``"never"``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator, Mapping, Optional

from .units import (
    Duration,
    Mode,
    RateParams,
    ReplicationSpec,
    ValidationError,
    parse_duration,
)

DURATION_FIELDS = ("mttf_h", "mttr_h", "mttf_o", "mttr_o", "mtfo_o", "mtfo_h", "mttf_s", "mttr_s")
MODEL_FIELDS = ("mode", "n_h", "n_s") + DURATION_FIELDS
REQUIRED = ("mttf_h", "mttr_h", "mttf_o", "mttr_o", "mttf_s", "mttr_s")
SWEEPABLE = MODEL_FIELDS + ("mtfo",)
MAX_GRID_POINTS = 10**6


def load_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: top level must be a JSON object")
    return data


def _int_field(raw: Mapping, name: str) -> int:
    v = raw.get(name, 1)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ValidationError(f"must be a positive integer, got {v!r}", name)
    return v


@dataclass(frozen=True)
class ModelConfig:
    params: RateParams
    spec: ReplicationSpec

    def resolved(self) -> dict[str, Any]:
        """Canonical form: every duration in seconds. Re-parses to the same model."""
        out: dict[str, Any] = {"mode": self.spec.mode.value, "n_h": self.spec.n_h, "n_s": self.spec.n_s}
        for name in DURATION_FIELDS:
            d = getattr(self.params, name)
            if d is not None:
                out[name] = d.canonical()
        return out


def parse_model(raw: Mapping[str, Any], extra: tuple[str, ...] = ()) -> ModelConfig:
    unknown = [k for k in raw if k not in MODEL_FIELDS and k != "mtfo" and k not in extra]
    if unknown:
        raise ValidationError(f"unknown field(s): {', '.join(sorted(unknown))}", unknown[0])
    missing = [k for k in REQUIRED if k not in raw]
    if missing:
        raise ValidationError("required field missing", missing[0])
    try:
        mode = Mode(raw.get("mode", Mode.ACTIVE_ACTIVE.value))
    except ValueError:
        raise ValidationError(f"must be one of {[m.value for m in Mode]}, got {raw.get('mode')!r}",
                              "mode") from None
    spec = ReplicationSpec(_int_field(raw, "n_h"), _int_field(raw, "n_s"), mode)

    durations: dict[str, Optional[Duration]] = {}
    for name in DURATION_FIELDS:
        value = raw.get(name, raw.get("mtfo") if name.startswith("mtfo") else None)
        if value is None:
            durations[name] = None
            continue
        try:
            durations[name] = parse_duration(value, allow_afr=name == "mttf_h",
                                             allow_never=name.startswith("mttf"))
        except ValidationError as exc:
            raise ValidationError(str(exc), name) from None
    if "mtfo" in raw and ("mtfo_o" in raw or "mtfo_h" in raw):
        raise ValidationError("give either mtfo or mtfo_o/mtfo_h, not both", "mtfo")
    if spec.mode is Mode.ACTIVE_PASSIVE and spec.n_h > 1:
        for name in ("mtfo_o", "mtfo_h"):
            if durations[name] is None:
                raise ValidationError("required for active_passive with n_h > 1", name)
    params = RateParams(**durations)
    return ModelConfig(params, spec)


@dataclass(frozen=True)
class GridPoint:
    labels: tuple  # raw grid values, in declared parameter order
    model: ModelConfig


@dataclass(frozen=True)
class SweepSpec:
    base: dict
    grid: dict  # parameter name -> list of values, order preserved
    out: Optional[str] = None
    format: str = "csv"

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "SweepSpec":
        unknown = [k for k in raw if k not in ("base", "grid", "out", "format")]
        if unknown:
            raise ValidationError("unknown field", unknown[0])
        base = raw.get("base", {})
        grid = raw.get("grid")
        if not isinstance(base, dict):
            raise ValidationError("must be an object", "base")
        if not isinstance(grid, dict) or not grid:
            raise ValidationError("must be a non-empty object of value lists", "grid")
        for name, values in grid.items():
            if name not in SWEEPABLE:
                raise ValidationError(f"not a sweepable parameter (choose from {', '.join(SWEEPABLE)})",
                                      f"grid.{name}")
            if not isinstance(values, list) or not values:
                raise ValidationError("needs a non-empty list of values", f"grid.{name}")
        fmt = raw.get("format", "csv")
        if fmt not in ("csv", "table"):
            raise ValidationError(f"must be csv or table, got {fmt!r}", "format")
        spec = cls(dict(base), dict(grid), raw.get("out"), fmt)
        if spec.size > MAX_GRID_POINTS:
            raise ValidationError(f"grid has {spec.size} points, limit is {MAX_GRID_POINTS}", "grid")
        return spec

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.grid)

    @property
    def size(self) -> int:
        n = 1
        for values in self.grid.values():
            n *= len(values)
        return n

    def points(self) -> Iterator[GridPoint]:
        """Cartesian product, last declared parameter varying fastest."""
        for combo in itertools.product(*self.grid.values()):
            raw = dict(self.base)
            for name, value in zip(self.names, combo):
                if name == "mtfo":
                    raw.pop("mtfo_o", None)
                    raw.pop("mtfo_h", None)
                raw[name] = value
            try:
                model = parse_model(raw)
            except ValidationError as exc:
                where = ", ".join(f"{n}={v}" for n, v in zip(self.names, combo))
                raise ValidationError(f"{exc} (at grid point {where})", exc.field) from None
            yield GridPoint(tuple(combo), model)
