"""Finite continuous-time Markov chains and their stationary laws."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

ROW_SUM_TOL = 1e-12
RESIDUAL_TOL = 1e-10
NEGATIVE_CLAMP = 1e-14


class ChainError(ValueError):
    """Malformed chain: unknown state, bad rate, reducible or absorbing."""


class SolverError(ArithmeticError):
    """Linear system could not be solved to tolerance."""


@dataclass(frozen=True, eq=False)
class CtmcModel:
    states: tuple
    generator: np.ndarray

    def __post_init__(self):
        q = self.generator
        n = len(self.states)
        if q.shape != (n, n):
            raise ChainError(f"generator shape {q.shape} does not match {n} states")
        off = q - np.diag(np.diag(q))
        if (off < 0).any():
            raise ChainError("negative off-diagonal rate")
        scale = np.abs(q).max(axis=1)
        if (np.abs(q.sum(axis=1)) > ROW_SUM_TOL * np.where(scale > 0, scale, 1.0)).any():
            raise ChainError("generator rows do not sum to zero")
        q.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, state: Hashable) -> int:
        return self.states.index(state)

    def exit_rates(self) -> np.ndarray:
        return -np.diag(self.generator)

    def dump(self) -> str:
        """Tab-separated matrix, one labelled row per state."""
        labels = [str(s) for s in self.states]
        lines = ["state\t" + "\t".join(labels)]
        for label, row in zip(labels, self.generator):
            lines.append(label + "\t" + "\t".join(repr(float(x)) for x in row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class StationaryDistribution:
    states: tuple
    probabilities: np.ndarray
    residual: float
    method: str = "direct"
    _lookup: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._lookup.update({s: i for i, s in enumerate(self.states)})

    def __getitem__(self, state: Hashable) -> float:
        return float(self.probabilities[self._lookup[state]])

    def mass(self, predicate) -> float:
        """Total probability of the states for which ``predicate`` holds."""
        return float(sum(p for s, p in zip(self.states, self.probabilities) if predicate(s)))


def _strongly_connected(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Indices unreachable from state 0 or unable to reach it (empty if irreducible)."""
    fwd: list[list[int]] = [[] for _ in range(n)]
    bwd: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        fwd[i].append(j)
        bwd[j].append(i)

    def reach(adj):
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            for j in adj[stack.pop()]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        return seen

    f, b = reach(fwd), reach(bwd)
    return [i for i in range(n) if not (f[i] and b[i])]


def build_generator(states: Sequence[Hashable],
                    transitions: Iterable[tuple[Hashable, Hashable, float]]) -> CtmcModel:
    """Assemble Q from ``(from, to, rate)`` triples; duplicate pairs add up."""
    states = tuple(states)
    if not states:
        raise ChainError("empty state space")
    index = {s: i for i, s in enumerate(states)}
    if len(index) != len(states):
        raise ChainError("duplicate state labels")
    n = len(states)
    q = np.zeros((n, n))
    for src, dst, rate in transitions:
        if src not in index:
            raise ChainError(f"transition {src}->{dst}: unknown source state {src!r}")
        if dst not in index:
            raise ChainError(f"transition {src}->{dst}: unknown target state {dst!r}")
        if src == dst:
            raise ChainError(f"transition {src}->{dst}: self-loop")
        if not (rate > 0 and np.isfinite(rate)):
            raise ChainError(f"transition {src}->{dst}: rate must be positive, got {rate!r}")
        q[index[src], index[dst]] += rate
    np.fill_diagonal(q, -q.sum(axis=1))

    if n > 1:
        edges = zip(*np.nonzero(q - np.diag(np.diag(q))))
        bad = _strongly_connected(n, edges)
        if bad:
            labels = ", ".join(str(states[i]) for i in bad)
            raise ChainError(f"chain is reducible; not strongly connected to {states[0]}: {labels}")
    return CtmcModel(states, q)


def _stationary_of(a: np.ndarray) -> np.ndarray:
    """Solve x @ a = 0 with sum(x) = 1 by swapping the last column for ones."""
    n = a.shape[0]
    m = a.T.copy()
    m[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    try:
        x = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"singular system (cond={np.linalg.cond(m):.3g})") from exc
    if not np.all(np.isfinite(x)):
        raise SolverError(f"non-finite solution (cond={np.linalg.cond(m):.3g})")
    return x


def _finish(model: CtmcModel, x: np.ndarray, method: str) -> StationaryDistribution:
    if (x < -NEGATIVE_CLAMP).any():
        raise SolverError(f"negative stationary probability {x.min():.3g}")
    x = np.clip(x, 0.0, None)
    x = x / x.sum()
    q = model.generator
    qmax = np.abs(q).max() if q.size else 0.0
    residual = float(np.abs(x @ q).max()) if q.size else 0.0
    if residual > RESIDUAL_TOL * max(qmax, np.finfo(float).tiny):
        raise SolverError(f"residual {residual:.3g} exceeds tolerance")
    x.setflags(write=False)
    return StationaryDistribution(model.states, x, residual, method)


def solve_direct(model: CtmcModel) -> StationaryDistribution:
    """pi Q = 0, sum(pi) = 1 via one dense LU solve."""
    if model.size == 1:
        return _finish(model, np.ones(1), "direct")
    q = model.generator
    # time-rescaling leaves pi unchanged and keeps entries O(1)
    x = _stationary_of(q / np.abs(q).max())
    return _finish(model, x, "direct")


def embedded_jump_chain(model: CtmcModel) -> np.ndarray:
    """Transition matrix of the jump chain, p_ij = q_ij / |q_ii|."""
    exits = model.exit_rates()
    if (exits <= 0).any():
        absorbing = [str(model.states[i]) for i in np.nonzero(exits <= 0)[0]]
        raise ChainError(f"absorbing state(s) with zero exit rate: {', '.join(absorbing)}")
    p = model.generator / exits[:, None]
    np.fill_diagonal(p, 0.0)
    return p


def solve_embedded_dtmc(model: CtmcModel) -> StationaryDistribution:
    """Stationary law of the jump chain, reweighted by mean holding times."""
    if model.size == 1:
        return _finish(model, np.ones(1), "embedded_dtmc")
    p = embedded_jump_chain(model)
    nu = _stationary_of(p - np.eye(model.size))
    x = nu / model.exit_rates()
    return _finish(model, x / x.sum(), "embedded_dtmc")


SOLVERS = {"direct": solve_direct, "embedded_dtmc": solve_embedded_dtmc}
