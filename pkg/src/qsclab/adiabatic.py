"""Adiabatic maximum-independent-set preparation by slow global rotation of a
fixed constraint Hamiltonian, with optional measure-and-recover rounds
interleaved into the Trotterized circuit.

The constraint Hamiltonian is diagonal: each edge contributes -delta on the
three independence-respecting basis states and +3*delta on the violating one,
leaving all independent sets degenerate at the bottom of a 4*delta gap. The
register starts in the all-zeros state and the Hamiltonian is conjugated by a
per-qubit rotation u(theta(t), phi(t)); the trailing full rotation is left
off, so the computational-basis law of the returned state is the algorithm's
output law directly.

Angle conventions: the default "linear" schedules are theta(t) = pi*t/T and
phi(t) = t. The "quadratic" variants (theta = pi*t^2/(2T), phi = t^2/2) read
the same angular-rate expressions literally as derivatives; with the
quadratic phi the rotation rate sweeps through resonance with the constraint
gap and the violating level gets populated, so it is not the default.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .graphs import Graph, GraphError, bit_counts, independent_set_mask
from .graphs import max_independent_set_size
from .statevec import GATE_X, StateVector, check_unitary, preparation_gate

EVOLUTION_MAX_VERTICES = 12


class ScheduleError(ValueError):
    """Invalid schedule parameters."""


@dataclass(frozen=True)
class Schedule:
    """Evolution parameterization.

    ``total_time=None`` resolves to n^2 for the graph being evolved.
    ``qsc_interval=None`` resolves to min(10, max(1, n_steps // 4)).
    """

    total_time: float | None = None
    delta: float = 1.0
    n_steps: int = 100
    theta_convention: str = "linear"
    phi_convention: str = "linear"
    qsc_interval: int | None = None

    def __post_init__(self) -> None:
        if self.theta_convention not in ("linear", "quadratic"):
            raise ScheduleError(f"unknown theta convention {self.theta_convention!r}")
        if self.phi_convention not in ("linear", "quadratic"):
            raise ScheduleError(f"unknown phi convention {self.phi_convention!r}")
        if self.n_steps < 1:
            raise ScheduleError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.total_time is not None and self.total_time <= 0:
            raise ScheduleError("total_time must be positive")
        if self.delta <= 0:
            raise ScheduleError("delta must be positive")

    def resolve(self, g: Graph) -> "Schedule":
        return self if self.total_time is not None else replace(self, total_time=float(g.n**2))

    def _require_time(self) -> float:
        if self.total_time is None:
            raise ScheduleError("schedule has unresolved total_time")
        return self.total_time

    def theta(self, t: float) -> float:
        T = self._require_time()
        if self.theta_convention == "linear":
            return math.pi * t / T
        return math.pi * t * t / (2.0 * T)

    def phi(self, t: float) -> float:
        if self.phi_convention == "linear":
            return t
        return t * t / 2.0

    def theta_rate(self, t: float) -> float:
        T = self._require_time()
        if self.theta_convention == "linear":
            return math.pi / T
        return math.pi * t / T

    def phi_rate(self, t: float) -> float:
        if self.phi_convention == "linear":
            return 1.0
        return t

    def dt(self) -> float:
        return self._require_time() / self.n_steps

    def resolved_qsc_interval(self) -> int:
        if self.qsc_interval is not None:
            return self.qsc_interval
        return min(10, max(1, self.n_steps // 4))


def u_b_1q(theta: float, phi: float) -> np.ndarray:
    """Per-qubit rotation; Hermitian and involutory, so it is its own inverse."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array(
        [[-c, np.exp(1j * phi) * s], [np.exp(-1j * phi) * s, c]], dtype=complex
    )


def constraint_energies(g: Graph, delta: float) -> np.ndarray:
    """Diagonal of the constraint Hamiltonian over all basis indices."""
    idx = np.arange(1 << g.n, dtype=np.int64)
    energies = np.zeros(idx.shape, dtype=float)
    for i, j in g.edges:
        violating = ((idx >> i) & (idx >> j) & 1) == 1
        energies += np.where(violating, 3.0 * delta, -delta)
    return energies


@dataclass(frozen=True)
class AdiabaticResult:
    final_state: StateVector
    size_probs: dict[int, float]
    non_is_weight: float
    figure_of_merit: float
    recovery_log: list[tuple[int, tuple[int, int]]] = field(default_factory=list)


def size_probabilities(probs: np.ndarray, g: Graph) -> tuple[dict[int, float], float]:
    """Probability of each independent-set size, plus leftover non-IS weight."""
    mask = independent_set_mask(g)
    sizes = bit_counts(g.n)
    table = {
        k: float(probs[mask & (sizes == k)].sum()) for k in range(g.n + 1)
    }
    return table, float(probs[~mask].sum())


def figure_of_merit(probs: np.ndarray, g: Graph) -> float:
    """Mean independent-set size of the law over the maximum size; non-IS
    outcomes contribute zero."""
    mask = independent_set_mask(g)
    sizes = bit_counts(g.n)
    mis = max_independent_set_size(g)
    return float(np.sum(probs * sizes * mask) / mis)


def _result_from_state(
    sv: StateVector, g: Graph, recoveries: list[tuple[int, tuple[int, int]]]
) -> AdiabaticResult:
    probs = sv.probabilities()
    table, bad = size_probabilities(probs, g)
    return AdiabaticResult(
        final_state=sv,
        size_probs=table,
        non_is_weight=bad,
        figure_of_merit=figure_of_merit(probs, g),
        recovery_log=recoveries,
    )


def _check_size(g: Graph) -> None:
    if g.n > EVOLUTION_MAX_VERTICES:
        raise GraphError(
            f"evolution limited to n <= {EVOLUTION_MAX_VERTICES}, got {g.n}"
        )


def run_exact(g: Graph, sched: Schedule, substeps: int = 8192) -> AdiabaticResult:
    """Reference integration of the continuously rotated evolution.

    Midpoint stepping: each substep applies the exactly exponentiated
    instantaneous Hamiltonian at the interval midpoint, which is a rotation
    conjugate of the diagonal constraint term. The trailing full rotation is
    applied inverted, matching the Trotterized circuit's readout convention.
    """
    _check_size(g)
    sched = sched.resolve(g)
    T = sched.total_time
    step = T / substeps
    energies = constraint_energies(g, sched.delta)
    phase = np.exp(-1j * step * energies)
    sv = StateVector(g.n)
    for k in range(1, substeps + 1):
        tm = (k - 0.5) * step
        u = u_b_1q(sched.theta(tm), sched.phi(tm))
        for q in range(g.n):
            sv.apply_1q(u, q)
        sv.apply_diagonal_phase(phase)
        for q in range(g.n):
            sv.apply_1q(u, q)
    u_final = u_b_1q(sched.theta(T), sched.phi(T))
    for q in range(g.n):
        sv.apply_1q(u_final, q)
    sv.check_norm()
    return _result_from_state(sv, g, [])


def run_trotter(
    g: Graph,
    sched: Schedule,
    qsc: bool = False,
    seed: int | np.random.Generator = 0,
) -> AdiabaticResult:
    """First-order product-formula evolution, optionally interleaving serial
    per-edge syndrome extraction with isolated-edge recovery.

    Each step applies the diagonal constraint phase after shuttling the
    rotation frame forward, so between steps the register sits in the basis
    the constraint acts in; recovery rounds run at those boundaries. A
    detected violation leaves the two edge qubits in the all-ones product
    state; they are reset and re-prepared in the state an isolated edge
    would occupy at that point of the same schedule, then scanning proceeds
    to the next edge.
    """
    _check_size(g)
    sched = sched.resolve(g)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    T = sched.total_time
    dt = sched.dt()
    n_steps = sched.n_steps
    interval = sched.resolved_qsc_interval()
    energies = constraint_energies(g, sched.delta)
    phase = np.exp(-1j * dt * energies)
    boundary_times = (
        [n * dt for n in range(1, n_steps + 1) if n % interval == 0] if qsc else []
    )
    references = _edge_reference_table(sched, boundary_times)
    sv = StateVector(g.n)
    recoveries: list[tuple[int, tuple[int, int]]] = []
    for n in range(1, n_steps + 1):
        gate = u_b_1q(sched.theta(n * dt), sched.phi(n * dt)) @ u_b_1q(
            sched.theta((n - 1) * dt), sched.phi((n - 1) * dt)
        )
        for q in range(g.n):
            sv.apply_1q(gate, q)
        sv.apply_diagonal_phase(phase)
        if qsc and n % interval == 0:
            target = references[n * dt]
            for edge in g.edges:  # stored sorted; serial scan
                i, j = edge
                outcome = sv.measure_edge_projector(i, j, rng)
                if outcome == 1:
                    sv.apply_1q(GATE_X, i)
                    sv.apply_1q(GATE_X, j)
                    apply_two_qubit_prep(sv, prepare_two_qubit(target), i, j)
                    recoveries.append((n, edge))
    sv.check_norm()
    return _result_from_state(sv, g, recoveries)


# --- isolated-edge reference -------------------------------------------------

_EDGE = Graph.from_edge_list(2, [(0, 1)])


def isolated_edge_state(
    t: float,
    sched: Schedule,
    substeps_per_unit: float = 512.0,
) -> np.ndarray:
    """Exact two-qubit edge state at time t, expressed in the frame the
    Trotterized circuit occupies between steps.

    Returns a length-4 amplitude vector indexed by 2*(first qubit bit) +
    (second qubit bit).
    """
    sched._require_time()
    if not 0.0 <= t <= sched.total_time + 1e-9:
        raise ScheduleError(f"time {t} outside [0, {sched.total_time}]")
    return _edge_reference_table(sched, [t], substeps_per_unit)[t]


def _edge_reference_table(
    sched: Schedule,
    times: Sequence[float],
    substeps_per_unit: float = 512.0,
) -> dict[float, np.ndarray]:
    """Frame-shifted exact single-edge states at each requested time, from
    one continuous midpoint integration with checkpoints."""
    table: dict[float, np.ndarray] = {}
    if not times:
        return table
    energies = constraint_energies(_EDGE, sched.delta)
    sv = StateVector(2)
    t_prev = 0.0
    for t in sorted(set(times)):
        span = t - t_prev
        nsub = max(1, int(math.ceil(span * substeps_per_unit)))
        step = span / nsub if span > 0 else 0.0
        if step > 0:
            phase = np.exp(-1j * step * energies)
            for k in range(1, nsub + 1):
                tm = t_prev + (k - 0.5) * step
                u = u_b_1q(sched.theta(tm), sched.phi(tm))
                sv.apply_1q(u, 0).apply_1q(u, 1)
                sv.apply_diagonal_phase(phase)
                sv.apply_1q(u, 0).apply_1q(u, 1)
        t_prev = t
        framed = sv.copy()
        u_t = u_b_1q(sched.theta(t), sched.phi(t))
        framed.apply_1q(u_t, 0).apply_1q(u_t, 1)
        # statevector index has qubit 0 least significant; pair convention
        # puts the first qubit's bit on top
        table[t] = framed.amps[[0, 2, 1, 3]].copy()
    return table


# --- moving-frame analysis ----------------------------------------------------

def moving_frame_hamiltonian(
    t: float,
    sched: Schedule,
    theta_rate: float | None = None,
    phi_rate: float | None = None,
) -> np.ndarray:
    """Generator of the single-edge dynamics in the co-rotating frame:
    the diagonal constraint term plus the angular-rate connection terms.

    Rates default to the schedule's own; explicit zero rates recover the bare
    constraint spectrum.
    """
    sched._require_time()
    theta, phi = sched.theta(t), sched.phi(t)
    th_rate = sched.theta_rate(t) if theta_rate is None else theta_rate
    ph_rate = sched.phi_rate(t) if phi_rate is None else phi_rate
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    eip = np.exp(1j * phi)
    a_theta = 0.5 * np.array([[0.0, 1j * eip], [-1j / eip, 0.0]], dtype=complex)
    a_phi = np.array([[-s * s, -c * s * eip], [-c * s / eip, s * s]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    connection = th_rate * (np.kron(eye, a_theta) + np.kron(a_theta, eye)) + ph_rate * (
        np.kron(eye, a_phi) + np.kron(a_phi, eye)
    )
    h = np.diag(constraint_energies(_EDGE, sched.delta)).astype(complex) + connection
    if np.max(np.abs(h - h.conj().T)) > 1e-12:
        raise ScheduleError("moving-frame generator lost Hermiticity")
    return h


# --- two-qubit preparation ----------------------------------------------------

@dataclass(frozen=True)
class TwoQubitPrep:
    """Gate sequence taking |00> to a target two-qubit state: one gate on the
    control, one on the target, then a controlled gate on the target."""

    control_gate: np.ndarray
    target_gate: np.ndarray
    controlled_gate: np.ndarray


def prepare_two_qubit(amps: Sequence[complex]) -> TwoQubitPrep:
    """Sequence preparing amplitudes (a00, a01, a10, a11) indexed by
    2*(control bit) + (target bit), exact up to floating point."""
    vec = np.asarray(amps, dtype=complex)
    if vec.shape != (4,):
        raise ScheduleError("two-qubit target must have 4 amplitudes")
    if abs(np.sum(np.abs(vec) ** 2) - 1.0) > 1e-10:
        raise ScheduleError("two-qubit target must be unit norm")
    w0 = math.sqrt(float(np.sum(np.abs(vec[:2]) ** 2)))
    w1 = math.sqrt(float(np.sum(np.abs(vec[2:]) ** 2)))
    eye = np.eye(2, dtype=complex)
    if w1 < 1e-12:
        return TwoQubitPrep(eye, preparation_gate(vec[:2] / w0), eye)
    if w0 < 1e-12:
        return TwoQubitPrep(GATE_X.copy(), eye, preparation_gate(vec[2:] / w1))
    branch0 = vec[:2] / w0
    branch1 = vec[2:] / w1
    control_gate = preparation_gate(np.array([w0, w1]))
    target_gate = preparation_gate(branch0)
    perp0 = np.array([-np.conj(branch0[1]), np.conj(branch0[0])])
    perp1 = np.array([-np.conj(branch1[1]), np.conj(branch1[0])])
    controlled = np.outer(branch1, branch0.conj()) + np.outer(perp1, perp0.conj())
    check_unitary(controlled, 1e-10)
    return TwoQubitPrep(control_gate, target_gate, controlled)


def apply_two_qubit_prep(
    sv: StateVector, prep: TwoQubitPrep, control: int, target: int
) -> StateVector:
    sv.apply_1q(prep.control_gate, control)
    sv.apply_1q(prep.target_gate, target)
    sv.apply_controlled_1q(prep.controlled_gate, control, target)
    return sv
