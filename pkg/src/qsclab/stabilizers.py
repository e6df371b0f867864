"""Diagonal constraint stabilizers and ancilla syndrome-extraction unitaries.

Any total Boolean predicate over k bits yields a 2^k diagonal operator with
entry +1 on satisfying bitstrings and -1 on violating ones, and a 2^(k+1)
permutation unitary that flips an ancilla exactly on violating inputs.

Matrix index convention: constraint bit 0 is the most significant bit of the
row index, so a bitstring read left to right is the row index in binary. The
syndrome unitary appends the ancilla as the least significant index bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

DENSE_ARITY_LIMIT = 10


class ConstraintError(ValueError):
    """Invalid constraint or arity guard violation."""


@dataclass(frozen=True)
class Constraint:
    """Total Boolean predicate over `arity` bits."""

    arity: int
    predicate: Callable[[tuple[int, ...]], bool]
    label: str

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ConstraintError(f"arity must be >= 1, got {self.arity}")

    def bits_of_row(self, row: int) -> tuple[int, ...]:
        k = self.arity
        return tuple((row >> (k - 1 - i)) & 1 for i in range(k))

    def truth_table(self) -> np.ndarray:
        """Boolean vector over all 2^k rows (bit 0 = most significant)."""
        return np.array(
            [bool(self.predicate(self.bits_of_row(r))) for r in range(1 << self.arity)]
        )


def is_edge_constraint() -> Constraint:
    """Two-bit independence: violated only by 11."""
    return Constraint(2, lambda b: not (b[0] and b[1]), "is-edge")


def one_hot_constraint(k: int) -> Constraint:
    return Constraint(k, lambda b: sum(b) == 1, f"one-hot-{k}")


def always_true_constraint(k: int) -> Constraint:
    return Constraint(k, lambda b: True, f"true-{k}")


def constraint_from_truth_table(values: Sequence[int], label: str) -> Constraint:
    """Constraint from 2^k listed outcomes, row order as in truth_table()."""
    n = len(values)
    k = n.bit_length() - 1
    if n != (1 << k) or k < 1:
        raise ConstraintError(f"truth table length must be a power of two >= 2, got {n}")
    table = tuple(bool(int(v)) for v in values)

    def predicate(bits: tuple[int, ...]) -> bool:
        row = 0
        for b in bits:
            row = (row << 1) | b
        return table[row]

    return Constraint(k, predicate, label)


def load_truth_table(lines: Iterable[str], label: str) -> Constraint:
    values = [line.strip() for line in lines if line.strip()]
    if any(v not in ("0", "1") for v in values):
        raise ConstraintError("truth table lines must be 0 or 1")
    return constraint_from_truth_table([int(v) for v in values], label)


@dataclass(frozen=True)
class StabilizerMatrix:
    """Diagonal operator with +-1 entries; +1 exactly on satisfying rows."""

    diagonal: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)

    @property
    def dimension(self) -> int:
        return int(self.diagonal.size)


@dataclass(frozen=True)
class SyndromeUnitary:
    """0/1 permutation matrix on k data bits plus one trailing ancilla bit."""

    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])


def _check_arity(c: Constraint) -> None:
    if c.arity > DENSE_ARITY_LIMIT:
        raise ConstraintError(
            f"dense build limited to arity <= {DENSE_ARITY_LIMIT}, got {c.arity}"
        )


def build_stabilizer(c: Constraint) -> StabilizerMatrix:
    _check_arity(c)
    table = c.truth_table()
    return StabilizerMatrix(diagonal=np.where(table, 1, -1).astype(np.int64))


def build_syndrome_unitary(c: Constraint) -> SyndromeUnitary:
    _check_arity(c)
    table = c.truth_table()
    dim = 2 << c.arity
    m = np.zeros((dim, dim), dtype=np.int64)
    for row, ok in enumerate(table):
        a0, a1 = 2 * row, 2 * row + 1
        if ok:
            m[a0, a0] = 1
            m[a1, a1] = 1
        else:
            m[a0, a1] = 1
            m[a1, a0] = 1
    return SyndromeUnitary(matrix=m)


def syndrome_bit(c: Constraint, bits: tuple[int, ...]) -> int:
    """Ancilla bit after extraction on a basis input with a fresh ancilla."""
    return int(not c.predicate(bits))


def embed_diagonal(c: Constraint, qubits: Sequence[int], n_total: int) -> np.ndarray:
    """Stabilizer diagonal over a full register.

    ``qubits[i]`` is the register qubit carrying constraint bit i; register
    basis indices use the simulator convention (qubit 0 least significant).
    """
    if len(qubits) != c.arity:
        raise ConstraintError("placement must list one qubit per constraint bit")
    if len(set(qubits)) != len(qubits):
        raise ConstraintError("placement qubits must be distinct")
    if any(not 0 <= q < n_total for q in qubits):
        raise ConstraintError("placement qubit out of range")
    diag_small = build_stabilizer(c).diagonal
    idx = np.arange(1 << n_total, dtype=np.int64)
    rows = np.zeros_like(idx)
    for i, q in enumerate(qubits):
        rows |= ((idx >> q) & 1) << (c.arity - 1 - i)
    return diag_small[rows]


@dataclass(frozen=True)
class AlgebraReport:
    involutory: bool
    commuting: bool
    closed_on_joint_eigenspace: bool
    joint_eigenspace_dimension: int

    @property
    def passed(self) -> bool:
        return self.involutory and self.commuting and self.closed_on_joint_eigenspace


def check_stabilizer_algebra(
    placements: Sequence[tuple[Constraint, Sequence[int]]],
    n_total: int,
) -> AlgebraReport:
    """Verify S^2 = I, pairwise commutation, and closure of products on the
    joint +1 eigenspace for embedded stabilizers."""
    if n_total > 20:
        raise ConstraintError(f"algebra check limited to n_total <= 20, got {n_total}")
    diagonals = [embed_diagonal(c, qs, n_total) for c, qs in placements]
    involutory = all(np.all(d * d == 1) for d in diagonals)
    commuting = True
    for a in range(len(diagonals)):
        for b in range(a + 1, len(diagonals)):
            da, db = diagonals[a], diagonals[b]
            if np.any(da * db != db * da):
                commuting = False
    joint = np.ones(1 << n_total, dtype=bool)
    for d in diagonals:
        joint &= d == 1
    closed = True
    for a in range(len(diagonals)):
        for b in range(len(diagonals)):
            product = diagonals[a] * diagonals[b]
            if np.any(product[joint] != 1):
                closed = False
    return AlgebraReport(
        involutory=involutory,
        commuting=commuting,
        closed_on_joint_eigenspace=closed,
        joint_eigenspace_dimension=int(joint.sum()),
    )


def format_matrix(m: np.ndarray) -> str:
    """Plain-text rows of integer matrix entries."""
    return "\n".join(" ".join(str(int(v)) for v in row) for row in np.atleast_2d(m))
