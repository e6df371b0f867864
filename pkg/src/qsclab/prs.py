"""Classical partial rejection sampling over independent sets.

Each draw sets every vertex independently to 1 with probability
lam / (1 + lam). A round checks all edges; if both endpoints of an edge are
set, that edge is violating, and every vertex of a violating edge plus all of
their neighbors are redrawn. Halting on zero violations yields a sample
distributed exactly as lam^|s| / Z(lam) over independent sets s.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .graphs import Graph, GraphError, VertexAssignment, ViolationSet
from .graphs import independent_set_mask, bit_counts

HALTED_FULL = "full"
HALTED_ALPHA = "alpha"
HALTED_CAP = "max_rounds"


class SamplerError(ValueError):
    """Invalid sampler parameters."""


@dataclass(frozen=True)
class HaltCondition:
    """Round-loop termination policy.

    ``alpha`` is the violating-edge fraction at or below which the loop may
    stop early; zero demands a violation-free state. ``max_rounds`` caps the
    number of rounds regardless; hitting the cap marks the trial censored.
    """

    alpha: float = 0.0
    max_rounds: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise SamplerError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise SamplerError(f"max_rounds must be >= 1, got {self.max_rounds}")

    @classmethod
    def full(cls, max_rounds: int | None = None) -> "HaltCondition":
        return cls(alpha=0.0, max_rounds=max_rounds)

    @classmethod
    def alpha_fraction(cls, alpha: float, max_rounds: int | None = None) -> "HaltCondition":
        if alpha <= 0.0:
            raise SamplerError("alpha_fraction needs alpha > 0; use full()")
        return cls(alpha=alpha, max_rounds=max_rounds)

    def classify(self, n_violating: int, n_edges: int, rounds: int) -> str | None:
        """Which condition fires after a completed check round, if any."""
        if n_violating == 0:
            return HALTED_FULL
        if self.alpha > 0.0 and n_edges > 0 and n_violating / n_edges <= self.alpha:
            return HALTED_ALPHA
        if self.max_rounds is not None and rounds >= self.max_rounds:
            return HALTED_CAP
        return None


@dataclass(frozen=True)
class SampleResult:
    assignment: VertexAssignment
    rounds: int
    halted_by: str
    violations_at_halt: ViolationSet


def bernoulli_vertex(lam: float, rng: np.random.Generator) -> int:
    """One vertex draw: 1 with probability lam / (1 + lam)."""
    if lam <= 0:
        raise SamplerError(f"lam must be positive, got {lam}")
    return int(rng.random() < lam / (1.0 + lam))


def sample_once(
    g: Graph,
    lam: float,
    halt: HaltCondition,
    seed: int | np.random.Generator,
) -> SampleResult:
    if lam <= 0:
        raise SamplerError(f"lam must be positive, got {lam}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    p = lam / (1.0 + lam)
    ei, ej = g.edge_arrays()
    n_edges = g.num_edges
    adjacency = np.zeros((g.n, g.n), dtype=bool)
    for i, j in g.edges:
        adjacency[i, j] = adjacency[j, i] = True

    bits = rng.random(g.n) < p
    rounds = 0
    while True:
        rounds += 1
        violating = bits[ei] & bits[ej]
        n_violating = int(violating.sum())
        fired = halt.classify(n_violating, n_edges, rounds)
        if fired is not None:
            bad_edges = frozenset(
                (int(ei[k]), int(ej[k])) for k in np.flatnonzero(violating)
            )
            endpoint_mask = np.zeros(g.n, dtype=bool)
            endpoint_mask[ei[violating]] = True
            endpoint_mask[ej[violating]] = True
            neighbor_mask = adjacency[endpoint_mask].any(axis=0) & ~endpoint_mask
            return SampleResult(
                assignment=VertexAssignment(tuple(int(b) for b in bits)),
                rounds=rounds,
                halted_by=fired,
                violations_at_halt=ViolationSet(
                    edges=bad_edges,
                    boundary=frozenset(int(v) for v in np.flatnonzero(neighbor_mask)),
                ),
            )
        endpoint_mask = np.zeros(g.n, dtype=bool)
        endpoint_mask[ei[violating]] = True
        endpoint_mask[ej[violating]] = True
        reset = endpoint_mask | adjacency[endpoint_mask].any(axis=0)
        bits[reset] = rng.random(int(reset.sum())) < p


@dataclass(frozen=True)
class DistributionCheck:
    frequencies: dict[VertexAssignment, float]
    chi_square: float
    p_value: float
    trials: int


def exact_law(g: Graph, lam: float) -> np.ndarray:
    """Target probability of every basis index: lam^|s| / Z on independent
    sets, zero elsewhere."""
    mask = independent_set_mask(g)
    weights = np.where(mask, lam ** bit_counts(g.n).astype(float), 0.0)
    return weights / weights.sum()


def empirical_distribution(
    g: Graph,
    lam: float,
    trials: int,
    seed: int,
) -> DistributionCheck:
    """Sampled frequencies over full-halt runs, with a goodness-of-fit
    statistic against the exact law."""
    if g.n > 20:
        raise GraphError(f"distribution check limited to n <= 20, got {g.n}")
    rng = np.random.default_rng(seed)
    counts = np.zeros(1 << g.n, dtype=np.int64)
    halt = HaltCondition.full()
    for _ in range(trials):
        result = sample_once(g, lam, halt, rng)
        counts[result.assignment.to_index()] += 1
    law = exact_law(g, lam)
    support = law > 0
    chi2, p_value = stats.chisquare(counts[support], trials * law[support])
    frequencies = {
        VertexAssignment.from_index(int(k), g.n): counts[k] / trials
        for k in np.flatnonzero(counts)
    }
    return DistributionCheck(
        frequencies=frequencies,
        chi_square=float(chi2),
        p_value=float(p_value),
        trials=trials,
    )
