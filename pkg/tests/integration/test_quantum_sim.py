"""Full-length runs of the quantum solver simulation."""

import numpy as np
import pytest

from lqgame.estimator import RngStream
from lqgame.quantum.ledger import DUAL_PREP, NORM_ESTIMATION, simulate_norm_estimate
from lqgame.quantum.solver import quantum_solver_sim

pytestmark = [pytest.mark.integration, pytest.mark.slow]


class TestQuantumSolverSim:
    """Test value, ledger and succinct output of complete runs."""

    def test_case2_value(self, case2_instance, seeds, required_successes):
        """Test value >= 2^(-1/2) - eps for the guaranteed fraction of seeds."""
        epsilon = 0.3
        successes = 0
        for seed in seeds:
            instance, value = case2_instance(6, 6, 2)
            report, ledger = quantum_solver_sim(instance, 2.0, epsilon, seed)
            assert report.queries <= report.query_budget
            assert ledger.breakdown[DUAL_PREP] > 0
            assert ledger.breakdown[NORM_ESTIMATION] > 0
            successes += report.primal_value >= value - epsilon
        assert successes >= required_successes(len(seeds))

    def test_succinct_matches_dense(self, case2_instance):
        """Test the succinct reconstruction on a complete run."""
        instance, _ = case2_instance(6, 5, 1)
        report, _ = quantum_solver_sim(instance, 2.0, 0.5, seed=7)
        np.testing.assert_allclose(report.succinct.dense(instance.fork()), report.x_bar, atol=1e-9)
        assert report.x_bar_norm(2.0) <= 1.0 + 0.1


class TestNormEstimateBoost:
    """Test the boosted estimate at a large repetition count."""

    @pytest.mark.statistical
    def test_median_of_many(self):
        """Test that a median of 101 draws at δ = 0.5 is almost always within the bound."""
        rng = RngStream(3)
        hits = sum(simulate_norm_estimate(1.0, 0.5, 101, 4, rng)[0].within_bound for _ in range(400))
        assert hits >= 395
