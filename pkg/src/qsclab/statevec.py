"""Dense statevector simulator.

Just enough machinery for measure-and-reset sampling loops and Trotterized
evolution: single-qubit gates, controlled gates, Toffoli, diagonal phases,
projective measurement, and reset. Basis index convention: bit q of the index
is qubit q, qubit 0 least significant.

Measurements with branch weight within DETERMINISTIC_TOL of 0 or 1 consume no
randomness; callers may rely on this when comparing runs that differ only in
bookkeeping (e.g. explicit vs implicit ancillas).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

MAX_QUBITS = 26
NORM_TOL = 1e-10
DETERMINISTIC_TOL = 1e-14


class SimulationError(RuntimeError):
    """Internal simulator invariant violated or invalid operation."""


@dataclass(frozen=True)
class MeasurementOutcome:
    bit: int
    probability: float  # pre-collapse weight of the observed branch


def _as_gate(matrix: Sequence[Sequence[complex]]) -> np.ndarray:
    g = np.asarray(matrix, dtype=complex)
    if g.shape != (2, 2):
        raise SimulationError(f"1q gate must be 2x2, got {g.shape}")
    return g


def check_unitary(g: np.ndarray, tol: float = 1e-12) -> None:
    if np.max(np.abs(g.conj().T @ g - np.eye(g.shape[0]))) > tol:
        raise SimulationError("matrix is not unitary")


GATE_X = np.array([[0, 1], [1, 0]], dtype=complex)
GATE_Z = np.array([[1, 0], [0, -1]], dtype=complex)
GATE_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def lambda_plus_state(lam: float) -> np.ndarray:
    """Single-qubit state with inclusion probability lam / (1 + lam)."""
    if lam <= 0:
        raise SimulationError(f"lam must be positive, got {lam}")
    p = lam / (1.0 + lam)
    return np.array([np.sqrt(1.0 - p), np.sqrt(p)], dtype=complex)


def preparation_gate(target: Sequence[complex]) -> np.ndarray:
    """Unitary sending |0> to the given single-qubit state."""
    t = np.asarray(target, dtype=complex)
    if abs(np.linalg.norm(t) - 1.0) > 1e-9:
        raise SimulationError("target state must be unit norm")
    return np.array([[t[0], -np.conj(t[1])], [t[1], np.conj(t[0])]], dtype=complex)


def gate_h_lambda(lam: float) -> np.ndarray:
    """Preparation gate for the weighted single-qubit state; Hadamard at lam=1."""
    t = lambda_plus_state(lam)
    return np.array([[t[0], t[1]], [t[1], -t[0]]], dtype=complex)


class StateVector:
    """Mutable amplitude array over n qubits. Operations act in place and
    return self."""

    __slots__ = ("n_qubits", "amps")

    def __init__(self, n_qubits: int, amps: np.ndarray | None = None):
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise SimulationError(f"need 1 <= n_qubits <= {MAX_QUBITS}, got {n_qubits}")
        self.n_qubits = n_qubits
        if amps is None:
            self.amps = np.zeros(1 << n_qubits, dtype=complex)
            self.amps[0] = 1.0
        else:
            amps = np.asarray(amps, dtype=complex)
            if amps.shape != (1 << n_qubits,):
                raise SimulationError("amplitude array has wrong length")
            self.amps = amps.copy()

    @classmethod
    def product(cls, states: Sequence[Sequence[complex]]) -> "StateVector":
        """Tensor product of single-qubit states; entry k is qubit k."""
        n = len(states)
        amps = np.ones(1, dtype=complex)
        for s in states:  # qubit 0 varies fastest, so later qubits go left
            vec = np.asarray(s, dtype=complex)
            if vec.shape != (2,):
                raise SimulationError("per-qubit states must have length 2")
            if abs(np.linalg.norm(vec) - 1.0) > 1e-9:
                raise SimulationError("per-qubit states must be unit norm")
            amps = np.kron(vec, amps)
        return cls(n, amps)

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def check_norm(self) -> None:
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise SimulationError(f"norm drifted to {self.norm()}")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def _check_qubit(self, q: int) -> None:
        if not 0 <= q < self.n_qubits:
            raise SimulationError(f"qubit index {q} out of range")

    # --- unitaries ---------------------------------------------------------

    def apply_1q(self, gate: Sequence[Sequence[complex]], q: int) -> "StateVector":
        self._check_qubit(q)
        g = _as_gate(gate)
        view = self.amps.reshape(-1, 2, 1 << q)
        self.amps = np.einsum("ab,ibj->iaj", g, view).reshape(-1)
        return self

    def apply_controlled_1q(
        self, gate: Sequence[Sequence[complex]], control: int, target: int
    ) -> "StateVector":
        self._check_qubit(control)
        self._check_qubit(target)
        if control == target:
            raise SimulationError("control and target must differ")
        g = _as_gate(gate)
        idx = np.arange(self.amps.size)
        on = ((idx >> control) & 1) == 1
        t0 = on & (((idx >> target) & 1) == 0)
        i0 = idx[t0]
        i1 = i0 | (1 << target)
        a0, a1 = self.amps[i0].copy(), self.amps[i1].copy()
        self.amps[i0] = g[0, 0] * a0 + g[0, 1] * a1
        self.amps[i1] = g[1, 0] * a0 + g[1, 1] * a1
        return self

    def apply_toffoli(self, c1: int, c2: int, target: int) -> "StateVector":
        for q in (c1, c2, target):
            self._check_qubit(q)
        if len({c1, c2, target}) != 3:
            raise SimulationError("Toffoli qubits must be distinct")
        idx = np.arange(self.amps.size)
        sel = (((idx >> c1) & 1) == 1) & (((idx >> c2) & 1) == 1)
        i0 = idx[sel & (((idx >> target) & 1) == 0)]
        i1 = i0 | (1 << target)
        self.amps[i0], self.amps[i1] = self.amps[i1].copy(), self.amps[i0].copy()
        return self

    def apply_diagonal_phase(self, phases: np.ndarray) -> "StateVector":
        phases = np.asarray(phases, dtype=complex)
        if phases.shape != self.amps.shape:
            raise SimulationError("phase vector has wrong length")
        if np.max(np.abs(np.abs(phases) - 1.0)) > 1e-9:
            raise SimulationError("diagonal phases must be unimodular")
        self.amps *= phases
        return self

    # --- measurement and reset ---------------------------------------------

    def marginal_one_probability(self, q: int) -> float:
        self._check_qubit(q)
        idx = np.arange(self.amps.size)
        sel = ((idx >> q) & 1) == 1
        return float(np.sum(np.abs(self.amps[sel]) ** 2))

    def edge_violation_weight(self, i: int, j: int) -> float:
        """Weight of basis states with both qubits i and j set."""
        self._check_qubit(i)
        self._check_qubit(j)
        idx = np.arange(self.amps.size)
        sel = (((idx >> i) & 1) & ((idx >> j) & 1)) == 1
        return float(np.sum(np.abs(self.amps[sel]) ** 2))

    def _collapse(self, keep: np.ndarray, weight: float) -> None:
        if weight < DETERMINISTIC_TOL:
            raise SimulationError("collapsed onto a zero-weight branch")
        self.amps[~keep] = 0.0
        self.amps /= np.sqrt(weight)

    def measure_qubit(
        self, q: int, rng: np.random.Generator
    ) -> MeasurementOutcome:
        p1 = self.marginal_one_probability(q)
        if p1 < DETERMINISTIC_TOL:
            bit = 0
        elif p1 > 1.0 - DETERMINISTIC_TOL:
            bit = 1
        else:
            bit = int(rng.random() < p1)
        idx = np.arange(self.amps.size)
        keep = (((idx >> q) & 1) == bit)
        self._collapse(keep, p1 if bit else 1.0 - p1)
        return MeasurementOutcome(bit=bit, probability=p1 if bit else 1.0 - p1)

    def measure_edge_projector(
        self, i: int, j: int, rng: np.random.Generator
    ) -> int:
        """Projective measurement of "both qubits set" on an edge; outcome 1
        collapses onto the violating subspace. Equivalent in law to a Toffoli
        onto a fresh ancilla followed by an ancilla measurement."""
        if i == j:
            raise SimulationError("edge endpoints must differ")
        p1 = self.edge_violation_weight(i, j)
        if p1 < DETERMINISTIC_TOL:
            bit = 0
        elif p1 > 1.0 - DETERMINISTIC_TOL:
            bit = 1
        else:
            bit = int(rng.random() < p1)
        idx = np.arange(self.amps.size)
        both = (((idx >> i) & 1) & ((idx >> j) & 1)) == 1
        keep = both if bit else ~both
        self._collapse(keep, p1 if bit else 1.0 - p1)
        return bit

    def reset_qubit(
        self,
        q: int,
        target: Sequence[complex],
        rng: np.random.Generator,
    ) -> "StateVector":
        """Measure q, classically correct to |0>, then prepare the target."""
        outcome = self.measure_qubit(q, rng)
        if outcome.bit == 1:
            self.apply_1q(GATE_X, q)
        self.apply_1q(preparation_gate(target), q)
        return self

    # --- diagnostics ---------------------------------------------------------

    def dump(self, threshold: float = 1e-12) -> str:
        """One line per retained amplitude: "bitstring re im" with the
        character at position v holding the bit of qubit v."""
        lines = []
        for k, a in enumerate(self.amps):
            if abs(a) < threshold:
                continue
            bits = "".join(str((k >> v) & 1) for v in range(self.n_qubits))
            lines.append(f"{bits} {float(a.real)!r} {float(a.imag)!r}")
        return "\n".join(lines)
