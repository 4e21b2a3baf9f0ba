"""Unavailable cell sites under centralized and distributed CU placement.

With a centralized CU every site depends on the one CU, so a CU outage takes
all ``n_c`` sites down at once. With distributed CUs each site has its own CU
and site outages are independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import binom

from .units import ValidationError


class Placement(str, Enum):
    CENTRALIZED = "centralized"
    DISTRIBUTED = "distributed"


@dataclass(frozen=True)
class NetworkScenario:
    n_c: int
    f_du: float
    f_cu: float

    def __post_init__(self):
        if isinstance(self.n_c, bool) or not isinstance(self.n_c, (int, np.integer)) or self.n_c < 1:
            raise ValidationError(f"must be a positive integer, got {self.n_c!r}", "n_c")
        for name in ("f_du", "f_cu"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"must be a probability in [0, 1], got {v!r}", name)

    @classmethod
    def from_outages(cls, n_c: int, du_outage: float, cu_outage: float) -> "NetworkScenario":
        for name, v in (("du_outage", du_outage), ("cu_outage", cu_outage)):
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"must be a probability in [0, 1], got {v!r}", name)
        return cls(n_c, 1.0 - du_outage, 1.0 - cu_outage)


@dataclass(frozen=True)
class OutagePmf:
    placement: Placement
    pmf: np.ndarray  # pmf[k] = P(k sites unavailable)
    p_cell_outage: float

    @property
    def mean(self) -> float:
        return float(np.dot(np.arange(len(self.pmf)), self.pmf))

    @property
    def p_all_down(self) -> float:
        return float(self.pmf[-1])

    @property
    def p_none_down(self) -> float:
        return float(self.pmf[0])


def cell_outage(s: NetworkScenario) -> float:
    """Per-site outage probability; the same for both placements."""
    return 1.0 - s.f_du * s.f_cu


_TINY = 1e-300  # scipy's binom overflows for p just above the float minimum


def _down_pmf(n: int, p_up: float) -> np.ndarray:
    """P(k of n sites down) when each is up independently with probability p_up."""
    if p_up >= 0.5:
        # 1 - p_up is exact here, so count down sites directly
        return binom.pmf(np.arange(n + 1), n, 1.0 - p_up)
    # count up sites instead so a small p_up keeps all its digits
    return binom.pmf(np.arange(n, -1, -1), n, p_up if p_up >= _TINY else 0.0)


def pmf_centralized(s: NetworkScenario) -> OutagePmf:
    pmf = s.f_cu * _down_pmf(s.n_c, s.f_du)
    # CU down: every site is down regardless of its DU
    pmf[-1] = (1.0 - s.f_cu) + s.f_cu * (1.0 - s.f_du) ** s.n_c
    return OutagePmf(Placement.CENTRALIZED, pmf, cell_outage(s))


def pmf_distributed(s: NetworkScenario) -> OutagePmf:
    return OutagePmf(Placement.DISTRIBUTED, _down_pmf(s.n_c, s.f_du * s.f_cu), cell_outage(s))


def expected_unavailable(s: NetworkScenario) -> float:
    return s.n_c * cell_outage(s)
