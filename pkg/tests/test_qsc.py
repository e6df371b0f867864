import numpy as np
import pytest

from qsclab.graphs import Graph, gen_regular, independent_set_mask, partition_function
from qsclab.prs import HALTED_ALPHA, HALTED_CAP, HALTED_FULL, HaltCondition, SamplerError
from qsclab.qsc import (
    EquivalenceReport,
    check_alpha_halt_structure,
    non_is_weight,
    prepare_distribution,
    round_distribution_equivalence,
    verify_gibbs_law,
)
from qsclab.statevec import lambda_plus_state


class TestPrepareDistribution:
    def test_k2_uniform_magnitudes(self, k2):
        result = prepare_distribution(k2, 1.0, HaltCondition.full(), 7)
        probs = result.final_state.probabilities()
        assert np.allclose(probs[:3], 1.0 / 3.0, atol=1e-12)
        assert probs[3] < 1e-12

    def test_k2_weighted_magnitudes(self, k2):
        result = prepare_distribution(k2, 2.0, HaltCondition.full(), 8)
        probs = result.final_state.probabilities()
        assert probs[0] == pytest.approx(1 / 5, abs=1e-12)
        assert probs[1] == pytest.approx(2 / 5, abs=1e-12)
        assert probs[2] == pytest.approx(2 / 5, abs=1e-12)

    def test_edgeless_graph_halts_immediately(self):
        g = Graph.from_edge_list(3, [])
        result = prepare_distribution(g, 0.5, HaltCondition.full(), 1)
        assert result.rounds == 1
        assert result.halted_by == HALTED_FULL
        single = lambda_plus_state(0.5)
        expected = np.kron(single, np.kron(single, single))
        assert np.allclose(np.abs(result.final_state.amps), np.abs(expected))

    def test_rounds_match_violation_log(self, c5):
        result = prepare_distribution(c5, 1.0, HaltCondition.full(), 3)
        assert len(result.violation_log) == result.rounds
        assert len(result.violation_log[-1]) == 0

    def test_cap_halt(self, petersen):
        result = prepare_distribution(petersen, 5.0, HaltCondition.full(max_rounds=2), 4)
        assert result.halted_by == HALTED_CAP
        assert result.rounds == 2


class TestGibbsLaw:
    @pytest.mark.parametrize("lam", [0.3, 1.0, 2.0])
    def test_k2_law(self, k2, lam):
        result = prepare_distribution(k2, lam, HaltCondition.full(), 11)
        assert verify_gibbs_law(result, k2, lam) < 1e-9

    def test_p3_law_against_pinned_normalizer(self, p3):
        # independent sets: empty, three singletons, {0,2}
        assert partition_function(p3, 0.5) == pytest.approx(1 + 3 * 0.5 + 0.25)
        result = prepare_distribution(p3, 0.5, HaltCondition.full(), 12)
        assert verify_gibbs_law(result, p3, 0.5) < 1e-9

    def test_triangle_uniform_quarters(self, triangle):
        result = prepare_distribution(triangle, 1.0, HaltCondition.full(), 13)
        probs = result.final_state.probabilities()
        mask = independent_set_mask(triangle)
        assert np.allclose(probs[mask], 0.25, atol=1e-12)

    def test_zero_leakage(self, c5):
        for lam in (0.3, 1.0, 2.0):
            result = prepare_distribution(c5, lam, HaltCondition.full(), 14)
            assert non_is_weight(result, c5) < 1e-12

    def test_rejects_non_full_runs(self, petersen):
        result = prepare_distribution(petersen, 3.0, HaltCondition.full(max_rounds=1), 5)
        with pytest.raises(SamplerError):
            verify_gibbs_law(result, petersen, 3.0)


class TestIntermediateLaw:
    @pytest.mark.parametrize("lam", [0.5, 1.0])
    def test_state_after_every_round(self, lam, c5):
        # After each measure-and-reset round the register must be exactly:
        # the weighted law on the untouched subgraph, tensored with fresh
        # single-qubit states on every reset vertex.
        g = c5
        single = lambda_plus_state(lam)
        result = prepare_distribution(
            g, lam, HaltCondition.full(), 21, record_states=True
        )
        for vs, snapshot in zip(result.violation_log, result.round_states):
            reset = vs.reset_set
            keep = [v for v in range(g.n) if v not in reset]
            sub_edges = [e for e in g.edges if e[0] in keep and e[1] in keep]
            expected = np.zeros(1 << g.n)
            for idx in range(1 << g.n):
                bits = [(idx >> v) & 1 for v in range(g.n)]
                if any(bits[i] and bits[j] for i, j in sub_edges):
                    continue
                amp = np.sqrt(lam ** sum(bits[v] for v in keep))
                for v in reset:
                    amp *= abs(single[bits[v]])
                expected[idx] = amp
            expected /= np.linalg.norm(expected)
            assert np.allclose(np.abs(snapshot.amps), expected, atol=1e-10)


class TestAlphaHaltStructure:
    def test_full_halt_vacuous(self, k2):
        result = prepare_distribution(k2, 1.0, HaltCondition.full(), 2)
        assert check_alpha_halt_structure(result, k2)

    def test_structure_on_alpha_halts(self, c5):
        halt = HaltCondition.alpha_fraction(0.2)
        alpha_halts = 0
        for seed in range(40):
            result = prepare_distribution(c5, 1.0, halt, seed)
            assert check_alpha_halt_structure(result, c5)
            alpha_halts += result.halted_by == HALTED_ALPHA
        assert alpha_halts > 0  # the check must not pass vacuously

    def test_structure_on_petersen(self, petersen):
        halt = HaltCondition.alpha_fraction(0.2)
        alpha_halts = 0
        for seed in range(12):
            result = prepare_distribution(petersen, 1.0, halt, seed)
            assert check_alpha_halt_structure(result, petersen)
            alpha_halts += result.halted_by == HALTED_ALPHA
        assert alpha_halts > 0

    def test_wrong_halt_type_rejected(self, petersen):
        result = prepare_distribution(petersen, 4.0, HaltCondition.full(max_rounds=1), 3)
        with pytest.raises(SamplerError):
            check_alpha_halt_structure(result, petersen)


class TestRoundEquivalence:
    def test_k2(self, k2):
        report = round_distribution_equivalence(k2, 1.0, trials=10_000, seed=31)
        assert isinstance(report, EquivalenceReport)
        assert report.p_value > 1e-3

    def test_p3_weighted(self, p3):
        report = round_distribution_equivalence(p3, 0.5, trials=10_000, seed=32)
        assert report.p_value > 1e-3

    def test_edgeless_degenerate(self):
        g = Graph.from_edge_list(4, [])
        report = round_distribution_equivalence(g, 1.0, trials=200, seed=33)
        assert report.p_value == 1.0
        assert report.quantum_counts == {1: 200}
        assert report.classical_counts == {1: 200}


class TestAncillaModes:
    @pytest.mark.parametrize("lam", [1.0, 2.0])
    def test_same_seed_gives_same_trajectory(self, lam, p3):
        # deterministic measurements draw nothing, so both bookkeeping
        # modes consume the stream identically
        for seed in range(15):
            implicit = prepare_distribution(p3, lam, HaltCondition.full(), seed)
            explicit = prepare_distribution(
                p3, lam, HaltCondition.full(), seed, ancilla_mode="explicit"
            )
            assert implicit.rounds == explicit.rounds
            assert [vs.edges for vs in implicit.violation_log] == [
                vs.edges for vs in explicit.violation_log
            ]
            assert np.allclose(
                implicit.final_state.amps, explicit.final_state.amps, atol=1e-10
            )

    def test_explicit_mode_law(self, k2):
        result = prepare_distribution(
            k2, 2.0, HaltCondition.full(), 17, ancilla_mode="explicit"
        )
        assert result.final_state.n_qubits == 2
        assert verify_gibbs_law(result, k2, 2.0) < 1e-9

    def test_explicit_mode_edge_limit(self, petersen):
        with pytest.raises(SamplerError):
            prepare_distribution(
                petersen, 1.0, HaltCondition.full(), 1, ancilla_mode="explicit"
            )

    def test_unknown_mode_rejected(self, k2):
        with pytest.raises(SamplerError):
            prepare_distribution(k2, 1.0, HaltCondition.full(), 1, ancilla_mode="fancy")


class TestAgainstClassicalLaw:
    def test_quantum_law_equals_classical_target(self):
        rng = np.random.default_rng(3)
        for seed in range(5):
            g = gen_regular(8, 3, int(rng.integers(1 << 30)))
            lam = float(rng.uniform(0.3, 2.0))
            result = prepare_distribution(g, lam, HaltCondition.full(), seed)
            assert verify_gibbs_law(result, g, lam) < 1e-9
