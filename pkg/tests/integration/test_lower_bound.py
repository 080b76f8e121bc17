"""Distinguishing experiments on the hard instances.

An accurate solution of a hidden Case-1 or Case-2 instance reveals both
the case and the hidden column l through the classification threshold.
"""

import pytest

from lqgame.adversarial import (
    CASE_1,
    CASE_2,
    HardInstanceSpec,
    build_hard_instance,
    classify_from_solution,
    lower_bound_trial,
)
from lqgame.estimator import RngStream
from lqgame.norms import NormPair
from lqgame.oracles import game_value_exact

pytestmark = [pytest.mark.integration, pytest.mark.slow]


class TestClassification:
    """Test (case, l) recovery."""

    def test_certified_solutions_classify_correctly(self):
        """Test that near-optimal points of random hidden instances reveal (case, l)."""
        rng = RngStream(17)
        for _ in range(10):
            spec = HardInstanceSpec.random(32, 32, 2.0, rng)
            certificate = game_value_exact(build_hard_instance(spec), 2.0, tol=1e-4)
            assert certificate.lower == pytest.approx(spec.value, abs=1e-4)
            assert classify_from_solution(certificate.x, 2.0, 2.0) == (spec.case, spec.l)

    @pytest.mark.parametrize("q", [1.25, 1.5, 2.0])
    def test_case1_and_case2_values(self, q):
        """Test the closed-form values at both exponents on n = d = 32."""
        pair = NormPair(q)
        for spec in (HardInstanceSpec(CASE_1, 32, 32, l=5, k=9, p=pair.p),
                     HardInstanceSpec(CASE_2, 32, 32, l=5, p=pair.p)):
            certificate = game_value_exact(build_hard_instance(spec), q, tol=1e-4)
            assert certificate.lower - 1e-9 <= spec.value <= certificate.upper + 1e-9


class TestDistinguishingExperiment:
    """Test (case, l) recovery from solver output on hidden random instances."""

    @staticmethod
    def hidden_specs(count, seed):
        """Draw random specs until both cases appear among ``count`` of them."""
        rng = RngStream(seed)
        specs = []
        while len(specs) < count or len({spec.case for spec in specs}) < 2:
            spec = HardInstanceSpec.random(4, 4, 2.0, rng)
            if len(specs) < count - 1 or len({s.case for s in specs} | {spec.case}) == 2:
                specs.append(spec)
        return specs

    def test_solver_trials_recover_hidden_spec(self, required_successes):
        """Test that solving at eps = 0.035 < 0.04 reveals (case, l) in at least 2/3 of trials."""
        specs = self.hidden_specs(3, seed=41)
        assert {spec.case for spec in specs} == {CASE_1, CASE_2}
        trials = [lower_bound_trial(spec, 0.035, seed) for seed, spec in enumerate(specs)]
        for trial in trials:
            assert trial.report.queries <= trial.report.query_budget
        assert sum(trial.correct for trial in trials) >= required_successes(len(trials))
