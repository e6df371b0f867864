"""Quantum measure-and-reset preparation of independent-set distributions.

Every vertex qubit starts in the weighted single-qubit state with inclusion
probability lam / (1 + lam). Each round measures the violation projector on
every edge whose state is unknown, then resets the qubits of violating edges
and all their neighbors back to the initial single-qubit state. On a
violation-free halt the register holds amplitudes sqrt(lam^|s| / Z) on
independent sets s and nothing elsewhere; the round-count distribution
matches the classical resampling loop exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .graphs import Graph, GraphError, ViolationSet
from .graphs import bit_counts, independent_set_mask
from .prs import HALTED_FULL, HaltCondition, SamplerError, sample_once
from .statevec import MAX_QUBITS, StateVector, lambda_plus_state

EXPLICIT_ANCILLA_EDGE_LIMIT = 4


@dataclass(frozen=True)
class QscRunResult:
    final_state: StateVector
    rounds: int
    violation_log: list[ViolationSet]
    halted_by: str
    round_states: list[StateVector] = field(default_factory=list)


def _violation_set(g: Graph, bad_edges: list[tuple[int, int]]) -> ViolationSet:
    endpoints = set(v for e in bad_edges for v in e)
    boundary = frozenset(
        w for v in endpoints for w in g.neighbors[v] if w not in endpoints
    )
    return ViolationSet(edges=frozenset(bad_edges), boundary=boundary)


def prepare_distribution(
    g: Graph,
    lam: float,
    halt: HaltCondition,
    seed: int | np.random.Generator,
    ancilla_mode: str = "implicit",
    record_states: bool = False,
) -> QscRunResult:
    """Run the measure-and-reset loop on the simulator.

    ``ancilla_mode="implicit"`` measures the two-qubit violation projector
    directly; ``"explicit"`` materializes one ancilla per edge and extracts
    the syndrome with a Toffoli, as the gate-level construction prescribes.
    """
    if lam <= 0:
        raise SamplerError(f"lam must be positive, got {lam}")
    if ancilla_mode not in ("implicit", "explicit"):
        raise SamplerError(f"unknown ancilla mode {ancilla_mode!r}")
    explicit = ancilla_mode == "explicit"
    if explicit and g.num_edges > EXPLICIT_ANCILLA_EDGE_LIMIT:
        raise SamplerError(
            f"explicit ancillas limited to {EXPLICIT_ANCILLA_EDGE_LIMIT} edges"
        )
    n_total = g.n + (g.num_edges if explicit else 0)
    if n_total > MAX_QUBITS:
        raise GraphError(f"register of {n_total} qubits exceeds simulator cap")

    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    vertex_state = lambda_plus_state(lam)
    ancilla_of = {e: g.n + k for k, e in enumerate(g.edges)} if explicit else {}

    states = [vertex_state] * g.n + [np.array([1.0, 0.0])] * (n_total - g.n)
    sv = StateVector.product(states)

    unknown = list(g.edges)
    rounds = 0
    log: list[ViolationSet] = []
    snapshots: list[StateVector] = []
    while True:
        rounds += 1
        bad: list[tuple[int, int]] = []
        for i, j in sorted(unknown):
            if explicit:
                anc = ancilla_of[(i, j)]
                sv.reset_qubit(anc, np.array([1.0, 0.0]), rng)
                sv.apply_toffoli(i, j, anc)
                outcome = sv.measure_qubit(anc, rng).bit
            else:
                outcome = sv.measure_edge_projector(i, j, rng)
            if outcome == 1:
                bad.append((i, j))
        vs = _violation_set(g, bad)
        log.append(vs)
        fired = halt.classify(len(bad), g.num_edges, rounds)
        if fired is not None:
            final = _extract_data_register(sv, g.n) if explicit else sv
            final.check_norm()
            return QscRunResult(
                final_state=final,
                rounds=rounds,
                violation_log=log,
                halted_by=fired,
                round_states=snapshots,
            )
        reset = sorted(vs.reset_set)
        for v in reset:
            sv.reset_qubit(v, vertex_state, rng)
        unknown = [e for e in g.edges if e[0] in vs.reset_set or e[1] in vs.reset_set]
        if record_states:
            snapshot = _extract_data_register(sv, g.n) if explicit else sv.copy()
            snapshots.append(snapshot)


def _extract_data_register(sv: StateVector, n_data: int) -> StateVector:
    """Slice out the first n_data qubits; every higher qubit must be in a
    definite basis state (true after its last measurement or reset)."""
    amps = sv.amps.reshape(-1, 1 << n_data)
    weights = np.sum(np.abs(amps) ** 2, axis=1)
    block = int(np.argmax(weights))
    if weights[block] < 1.0 - 1e-9:
        raise SamplerError("ancilla register is not in a definite basis state")
    data = amps[block].copy()
    data /= np.linalg.norm(data)
    return StateVector(n_data, data)


def verify_gibbs_law(result: QscRunResult, g: Graph, lam: float) -> float:
    """Maximum absolute deviation of |amplitude|^2 from lam^|s| / Z over all
    basis states (zero target on non-independent sets)."""
    if result.halted_by != HALTED_FULL:
        raise SamplerError("law verification needs a full-halted run")
    mask = independent_set_mask(g)
    weights = np.where(mask, lam ** bit_counts(g.n).astype(float), 0.0)
    target = weights / weights.sum()
    return float(np.max(np.abs(result.final_state.probabilities() - target)))


def non_is_weight(result: QscRunResult, g: Graph) -> float:
    mask = independent_set_mask(g)
    return float(np.sum(result.final_state.probabilities()[~mask]))


def check_alpha_halt_structure(result: QscRunResult, g: Graph) -> bool:
    """Verify the structure of an early-halted state: violating-edge qubits
    read 1 with certainty, boundary qubits read 0 with certainty, and the
    rest is supported only on independent sets of the remaining subgraph."""
    if result.halted_by not in ("alpha", HALTED_FULL):
        raise SamplerError("structure check needs an alpha- or full-halted run")
    vs = result.violation_log[-1]
    probs = result.final_state.probabilities()
    idx = np.arange(probs.size)
    tol = 1e-12
    for v in sorted(vs.vertices):
        if np.sum(probs[((idx >> v) & 1) == 0]) > tol:
            return False
    for v in sorted(vs.boundary):
        if np.sum(probs[((idx >> v) & 1) == 1]) > tol:
            return False
    removed = vs.reset_set
    remaining_edges = [e for e in g.edges if e[0] not in removed and e[1] not in removed]
    support = np.flatnonzero(probs > tol)
    for k in support:
        for i, j in remaining_edges:
            if (k >> i) & (k >> j) & 1:
                return False
    return True


@dataclass(frozen=True)
class EquivalenceReport:
    statistic: float
    p_value: float
    quantum_counts: dict[int, int]
    classical_counts: dict[int, int]


def round_distribution_equivalence(
    g: Graph,
    lam: float,
    trials: int,
    seed: int,
) -> EquivalenceReport:
    """Two-sample chi-square test between quantum and classical round counts."""
    rng_q = np.random.default_rng(seed)
    rng_c = np.random.default_rng(seed + 1)
    halt = HaltCondition.full()
    q_rounds = [
        prepare_distribution(g, lam, halt, rng_q).rounds for _ in range(trials)
    ]
    c_rounds = [sample_once(g, lam, halt, rng_c).rounds for _ in range(trials)]
    stat, p = _two_sample_chi_square(q_rounds, c_rounds)
    return EquivalenceReport(
        statistic=stat,
        p_value=p,
        quantum_counts=_histogram(q_rounds),
        classical_counts=_histogram(c_rounds),
    )


def _histogram(values: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return out


def _two_sample_chi_square(a: list[int], b: list[int]) -> tuple[float, float]:
    """Contingency chi-square over binned counts; sparse upper tail bins are
    merged until every column total reaches 10."""
    values = sorted(set(a) | set(b))
    ha, hb = _histogram(a), _histogram(b)
    columns: list[tuple[int, int]] = [(ha.get(v, 0), hb.get(v, 0)) for v in values]
    merged: list[tuple[int, int]] = []
    for ca, cb in columns:
        if merged and sum(merged[-1]) < 10:
            pa, pb = merged[-1]
            merged[-1] = (pa + ca, pb + cb)
        else:
            merged.append((ca, cb))
    if len(merged) > 1 and sum(merged[-1]) < 10:
        (pa, pb), (ca, cb) = merged[-2], merged[-1]
        merged[-2:] = [(pa + ca, pb + cb)]
    if len(merged) < 2:
        return 0.0, 1.0  # degenerate distributions agree trivially
    table = np.array(merged).T
    stat, p, _, _ = stats.chi2_contingency(table)
    return float(stat), float(p)
