"""CU/DU application availability with independent replicas."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .ctmc import CtmcModel, build_generator
from .units import RateParams, ValidationError


@dataclass(frozen=True)
class AppAvailability:
    n: int
    pmf: np.ndarray  # pmf[i] = P(i replicas up)
    availability: float

    @property
    def outage_probability(self) -> float:
        return float(self.pmf[0])


def _down_probability(params: RateParams) -> float:
    lam, mu = params.app_fail_rate, params.app_repair_rate
    return lam / (lam + mu)


def app_single_availability(params: RateParams) -> float:
    """mu / (lambda + mu), written as 1 - P(down) to agree bit-for-bit with n = 1."""
    return 1.0 - _down_probability(params)


def app_availability(params: RateParams, n: int) -> AppAvailability:
    """Availability of ``n`` independent replicas: at least one must be up."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"replica count must be >= 1, got {n!r}", "n")
    n = int(n)
    down = _down_probability(params)
    pmf = binom.pmf(np.arange(n + 1), n, 1.0 - down)
    # binom sees 1 - down and loses digits of a tiny P(all down); use it directly
    outage = down ** n
    pmf[0] = outage
    return AppAvailability(n, pmf, 1.0 - outage)


def app_model_as_ctmc(params: RateParams, n: int) -> CtmcModel:
    """Birth-death chain on the number of up replicas (states 0..n)."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"replica count must be >= 1, got {n!r}", "n")
    lam, mu = params.app_fail_rate, params.app_repair_rate
    transitions = []
    for i in range(n + 1):
        if i > 0 and lam > 0:
            transitions.append((i, i - 1, i * lam))
        if i < n:
            transitions.append((i, i + 1, (n - i) * mu))
    states = range(n, -1, -1) if lam > 0 else [n]
    return build_generator(list(states), transitions if lam > 0 else [])
