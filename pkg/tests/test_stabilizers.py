import numpy as np
import pytest

from qsclab.stabilizers import (
    AlgebraReport,
    Constraint,
    ConstraintError,
    build_stabilizer,
    build_syndrome_unitary,
    check_stabilizer_algebra,
    constraint_from_truth_table,
    embed_diagonal,
    format_matrix,
    is_edge_constraint,
    load_truth_table,
    one_hot_constraint,
    always_true_constraint,
    syndrome_bit,
)
from qsclab.statevec import StateVector


def random_constraint(k: int, rng: np.random.Generator) -> Constraint:
    values = rng.integers(0, 2, size=1 << k)
    return constraint_from_truth_table(values.tolist(), f"random-{k}")


class TestStabilizer:
    def test_is_edge_diagonal(self):
        s = build_stabilizer(is_edge_constraint())
        assert s.diagonal.tolist() == [1, 1, 1, -1]

    def test_one_hot_three_diagonal(self):
        s = build_stabilizer(one_hot_constraint(3))
        assert s.diagonal.tolist() == [-1, 1, 1, -1, 1, -1, -1, -1]

    def test_always_true_is_identity(self):
        s = build_stabilizer(always_true_constraint(2))
        assert np.array_equal(s.matrix, np.eye(4))

    def test_sign_pattern_matches_truth_table(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            k = int(rng.integers(1, 7))
            c = random_constraint(k, rng)
            diag = build_stabilizer(c).diagonal
            table = c.truth_table()
            assert np.array_equal(diag == 1, table)

    def test_squares_to_identity(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            diag = build_stabilizer(random_constraint(4, rng)).diagonal
            assert np.all(diag * diag == 1)

    def test_arity_guard(self):
        with pytest.raises(ConstraintError):
            build_stabilizer(always_true_constraint(11))


class TestSyndromeUnitary:
    def test_always_true_is_identity(self):
        g = build_syndrome_unitary(always_true_constraint(2))
        assert np.array_equal(g.matrix, np.eye(8))

    def test_is_edge_equals_ancilla_controlled_flip(self):
        # controls on the two data bits, flip on the trailing ancilla bit
        g = build_syndrome_unitary(is_edge_constraint())
        expected = np.eye(8, dtype=np.int64)
        expected[6:8, 6:8] = [[0, 1], [1, 0]]  # rows 110, 111 swap
        assert np.array_equal(g.matrix, expected)

    def test_is_edge_matches_simulator_toffoli(self):
        # data bit 0 on register qubit 2, bit 1 on qubit 1, ancilla on qubit
        # 0 makes the register index equal the matrix row index
        g = build_syndrome_unitary(is_edge_constraint())
        for basis in range(8):
            amps = np.zeros(8, dtype=complex)
            amps[basis] = 1.0
            sv = StateVector(3, amps)
            sv.apply_toffoli(2, 1, 0)
            assert np.allclose(sv.amps, g.matrix[:, basis])

    def test_permutation_and_involution(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            k = int(rng.integers(1, 7))
            g = build_syndrome_unitary(random_constraint(k, rng)).matrix
            assert np.all(g.sum(axis=0) == 1)
            assert np.all(g.sum(axis=1) == 1)
            assert np.array_equal(g @ g, np.eye(g.shape[0], dtype=np.int64))

    def test_ancilla_reads_violation_bit(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            k = int(rng.integers(1, 6))
            c = random_constraint(k, rng)
            g = build_syndrome_unitary(c).matrix
            for row in range(1 << k):
                bits = c.bits_of_row(row)
                column = 2 * row  # ancilla starts in 0
                out = int(np.flatnonzero(g[:, column])[0])
                assert out >> 1 == row  # data bits untouched
                assert out & 1 == syndrome_bit(c, bits)

    def test_one_hot_flip_set(self):
        g = build_syndrome_unitary(one_hot_constraint(3)).matrix
        flipped = [row for row in range(8) if g[2 * row, 2 * row] == 0]
        assert flipped == [0b000, 0b011, 0b101, 0b110, 0b111]


class TestAlgebra:
    def test_shared_vertex_edges_commute(self):
        placements = [
            (is_edge_constraint(), (0, 1)),
            (is_edge_constraint(), (1, 2)),
        ]
        report = check_stabilizer_algebra(placements, 3)
        assert isinstance(report, AlgebraReport)
        assert report.commuting and report.involutory
        assert report.closed_on_joint_eigenspace
        # joint +1 space of the path = its independent sets
        assert report.joint_eigenspace_dimension == 5

    def test_product_on_satisfying_state(self):
        a = embed_diagonal(is_edge_constraint(), (0, 1), 3)
        b = embed_diagonal(is_edge_constraint(), (1, 2), 3)
        basis = 0b101  # qubits 0 and 2 set: independent on the path
        assert a[basis] * b[basis] == 1

    def test_embedding_respects_placement(self):
        d = embed_diagonal(is_edge_constraint(), (2, 0), 3)
        for idx in range(8):
            bits = ((idx >> 2) & 1, idx & 1)
            assert d[idx] == (1 if not (bits[0] and bits[1]) else -1)

    def test_mixed_arity_group(self):
        placements = [
            (is_edge_constraint(), (0, 1)),
            (one_hot_constraint(3), (1, 2, 3)),
        ]
        report = check_stabilizer_algebra(placements, 4)
        assert report.passed


class TestConstraintIO:
    def test_truth_table_roundtrip(self):
        c = one_hot_constraint(2)
        values = [int(v) for v in c.truth_table()]
        rebuilt = constraint_from_truth_table(values, "again")
        assert np.array_equal(rebuilt.truth_table(), c.truth_table())

    def test_load_truth_table(self):
        c = load_truth_table(["0", "1", "1", "0"], "xor-ish")
        assert c.arity == 2
        assert c.truth_table().tolist() == [False, True, True, False]

    def test_bad_lines_rejected(self):
        with pytest.raises(ConstraintError):
            load_truth_table(["0", "2"], "bad")

    def test_bad_length_rejected(self):
        with pytest.raises(ConstraintError):
            constraint_from_truth_table([0, 1, 1], "odd")

    def test_format_matrix(self):
        text = format_matrix(np.array([[1, 0], [0, -1]]))
        assert text == "1 0\n0 -1"
