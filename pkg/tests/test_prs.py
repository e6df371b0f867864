import numpy as np
import pytest

from qsclab.graphs import Graph, gen_regular, is_independent, violations
from qsclab.prs import (
    HALTED_ALPHA,
    HALTED_CAP,
    HALTED_FULL,
    DistributionCheck,
    HaltCondition,
    SamplerError,
    bernoulli_vertex,
    empirical_distribution,
    exact_law,
    sample_once,
)


class TestBernoulli:
    def test_rejects_nonpositive(self):
        with pytest.raises(SamplerError):
            bernoulli_vertex(0.0, np.random.default_rng(0))

    @pytest.mark.parametrize("lam,expected", [(1.0, 0.5), (3.0, 0.75), (0.02, 0.02 / 1.02)])
    def test_rate(self, lam, expected):
        rng = np.random.default_rng(11)
        trials = 40_000
        hits = sum(bernoulli_vertex(lam, rng) for _ in range(trials))
        sigma = np.sqrt(expected * (1 - expected) / trials)
        assert abs(hits / trials - expected) < 4 * sigma


class TestHaltCondition:
    def test_full_fires_only_on_zero(self):
        halt = HaltCondition.full()
        assert halt.classify(0, 5, 3) == HALTED_FULL
        assert halt.classify(1, 5, 3) is None

    def test_alpha_threshold(self):
        halt = HaltCondition.alpha_fraction(0.2)
        assert halt.classify(1, 5, 1) == HALTED_ALPHA
        assert halt.classify(2, 5, 1) is None
        assert halt.classify(0, 5, 1) == HALTED_FULL

    def test_cap_composes_with_alpha(self):
        halt = HaltCondition.alpha_fraction(0.1, max_rounds=2)
        assert halt.classify(3, 5, 1) is None
        assert halt.classify(3, 5, 2) == HALTED_CAP

    def test_validation(self):
        with pytest.raises(SamplerError):
            HaltCondition(alpha=1.5)
        with pytest.raises(SamplerError):
            HaltCondition(max_rounds=0)


class TestSampleOnce:
    def test_full_halt_is_independent(self, k2):
        for seed in range(40):
            r = sample_once(k2, 1.0, HaltCondition.full(), seed)
            assert str(r.assignment) in ("00", "01", "10")
            assert r.halted_by == HALTED_FULL
            assert len(r.violations_at_halt) == 0

    def test_k2_expected_rounds(self, k2):
        # success probability per attempt is 3/4, so rounds is geometric
        # with mean 4/3
        rng = np.random.default_rng(123)
        trials = 20_000
        rounds = [sample_once(k2, 1.0, HaltCondition.full(), rng).rounds for _ in range(trials)]
        sigma = np.sqrt((1 - 0.75) / 0.75**2 / trials)
        assert abs(np.mean(rounds) - 4.0 / 3.0) < 4 * sigma

    def test_cap_one_round(self, triangle):
        for seed in range(20):
            r = sample_once(triangle, 1.0, HaltCondition.full(max_rounds=1), seed)
            assert r.rounds == 1
            assert r.halted_by in (HALTED_FULL, HALTED_CAP)

    def test_cap_reported_not_raised(self, petersen):
        r = sample_once(petersen, 50.0, HaltCondition.full(max_rounds=3), 5)
        assert r.halted_by == HALTED_CAP
        assert r.rounds == 3

    def test_alpha_halt_bound(self, petersen):
        halt = HaltCondition.alpha_fraction(0.2)
        for seed in range(30):
            r = sample_once(petersen, 1.0, halt, seed)
            assert len(r.violations_at_halt) / petersen.num_edges <= 0.2
            if r.halted_by == HALTED_ALPHA:
                assert len(r.violations_at_halt) > 0

    def test_full_halt_over_random_graphs(self):
        rng = np.random.default_rng(2)
        for seed in range(25):
            g = gen_regular(10, 3, seed)
            r = sample_once(g, 0.8, HaltCondition.full(), rng)
            assert is_independent(g, r.assignment)

    def test_violations_at_halt_match_assignment(self, petersen):
        r = sample_once(petersen, 2.0, HaltCondition.alpha_fraction(0.3), 9)
        assert r.violations_at_halt == violations(petersen, r.assignment)


def _reference_sample(g, lam, halt, seed):
    """Transparent reimplementation with the same RNG consumption pattern:
    one block for the initial draw, one block per round for the reset set in
    ascending vertex order. Resampling must touch only violating-edge
    endpoints and their neighbors."""
    rng = np.random.default_rng(seed)
    p = lam / (1 + lam)
    bits = [int(x < p) for x in rng.random(g.n)]
    rounds = 0
    while True:
        rounds += 1
        bad = [e for e in g.edges if bits[e[0]] and bits[e[1]]]
        fired = halt.classify(len(bad), g.num_edges, rounds)
        if fired is not None:
            return bits, rounds, fired
        touched = sorted(
            {v for e in bad for v in e}
            | {w for e in bad for v in e for w in g.neighbors[v]}
        )
        draws = rng.random(len(touched))
        for v, x in zip(touched, draws):
            bits[v] = int(x < p)


class TestAgainstReference:
    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_bitwise_identical_to_reference(self, lam, c5):
        halt = HaltCondition.full(max_rounds=200)
        for seed in range(25):
            mine = sample_once(c5, lam, halt, seed)
            bits, rounds, fired = _reference_sample(c5, lam, halt, seed)
            assert list(mine.assignment.bits) == bits
            assert mine.rounds == rounds
            assert mine.halted_by == fired

    def test_reference_on_regular_graph(self):
        g = gen_regular(12, 3, seed=4)
        halt = HaltCondition.full(max_rounds=500)
        for seed in range(10):
            mine = sample_once(g, 1.0, halt, seed)
            bits, rounds, _ = _reference_sample(g, 1.0, halt, seed)
            assert list(mine.assignment.bits) == bits
            assert mine.rounds == rounds


class TestDistribution:
    def test_k2_weighted_frequencies(self, k2):
        check = empirical_distribution(k2, 2.0, trials=30_000, seed=3)
        freq = {str(a): f for a, f in check.frequencies.items()}
        assert freq["00"] == pytest.approx(0.2, abs=0.02)
        assert freq["01"] == pytest.approx(0.4, abs=0.02)
        assert freq["10"] == pytest.approx(0.4, abs=0.02)
        assert check.p_value > 1e-3

    def test_single_vertex_uniform(self):
        g = Graph.from_edge_list(1, [])
        check = empirical_distribution(g, 1.0, trials=20_000, seed=4)
        freq = {str(a): f for a, f in check.frequencies.items()}
        assert freq["0"] == pytest.approx(0.5, abs=0.02)

    def test_exact_law_normalized(self, p3):
        law = exact_law(p3, 0.5)
        assert law.sum() == pytest.approx(1.0)
        # Z = 1 + 3*(0.5) + 0.25 = 2.75; the lone two-vertex set is 101
        assert law[0b101] == pytest.approx(0.25 / 2.75)

    def test_returns_check_object(self, p3):
        check = empirical_distribution(p3, 0.5, trials=5_000, seed=6)
        assert isinstance(check, DistributionCheck)
        assert check.trials == 5_000


class TestMonotoneHardness:
    def test_mean_rounds_nondecreasing_in_weight(self):
        g = gen_regular(16, 3, seed=21)
        means = []
        for lam in (0.1, 0.3, 0.7, 1.0):
            rng = np.random.default_rng(77)
            rounds = [
                sample_once(g, lam, HaltCondition.full(), rng).rounds
                for _ in range(200)
            ]
            means.append(np.mean(rounds))
        assert all(means[i] <= means[i + 1] for i in range(len(means) - 1))
