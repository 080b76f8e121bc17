"""Tests for the sampled ℓq-ℓ1 solver, the ℓ1-ℓ1 solver and the dispatcher.

This module tests:
- Derived iteration counts and step sizes
- The p-norm OGD and MWU update rules
- Regret of p-norm OGD against fixed gradient sequences
- Query budgets, traces and determinism of solver runs
- Solution quality on games with known values
- Path selection between the two solvers
"""

import math

import numpy as np
import pytest

from lqgame.adversarial import build_hard_instance
from lqgame.constants import L1_CONSTANT, SOLVER_LOG_COEFF
from lqgame.exceptions import (
    LqGameInstanceError,
    LqGameInternalError,
    LqGameUsageError,
    LqGameZeroGradientError,
)
from lqgame.instance import GameInstance
from lqgame.norms import NormPair, lq_norm
from lqgame.solver.classical import mwu_step, pnorm_ogd_step, regret_run, solve_lq_l1
from lqgame.solver.dispatch import PATH_L1, PATH_LQ, choose_path, dispatch_threshold, solve_dispatch
from lqgame.solver.l1 import check_entries, l1_params, run_l1_l1, solve_l1_l1
from lqgame.solver.params import SolverParams, SolverState
from lqgame.storage.dense import DenseStorage
from lqgame.storage.generator import GeneratorStorage

IDENTITY_VALUE = 2.0 ** -0.5


class TestSolverParams:
    """Test derived constants."""

    def test_iteration_count(self):
        """Test T = ceil((895 ln n + 4p)/eps²) and the step sizes."""
        params = SolverParams.derive(4, NormPair(2.0), 0.5)
        expected_T = math.ceil((SOLVER_LOG_COEFF * math.log(4) + 8.0) / 0.25)
        assert params.T == expected_T
        assert params.eta == pytest.approx(math.sqrt(11.0 * math.log(4) / (12.0 * expected_T)))
        assert params.iota == pytest.approx(math.sqrt(1.0 / (2.0 * expected_T)))
        assert params.clip_threshold == pytest.approx(1.0 / params.eta)

    def test_single_row(self):
        """Test that n = 1 gives eta = 0 and no clipping."""
        params = SolverParams.derive(1, NormPair(2.0), 0.5)
        assert params.T == 32
        assert params.eta == 0.0
        assert params.clip_threshold == math.inf
        assert params.iota == pytest.approx(0.125)

    @pytest.mark.parametrize("epsilon", [0.0, 1.0, -0.1])
    def test_epsilon_range(self, epsilon):
        """Test that epsilon outside (0, 1) is rejected."""
        with pytest.raises(LqGameUsageError):
            SolverParams.derive(4, NormPair(2.0), epsilon)

    def test_to_dict(self):
        """Test exported keys."""
        data = SolverParams.derive(3, NormPair(1.5), 0.5, seed=4).to_dict()
        assert set(data) == {'q', 'p', 'epsilon', 'T', 'eta', 'iota', 'seed'}
        assert data['seed'] == 4


class TestSolverState:
    """Test the primal-dual state."""

    def test_initial(self):
        """Test y = 0, x = 0 and uniform weights."""
        state = SolverState.initial(3, 2, 2.0)
        np.testing.assert_array_equal(state.x, np.zeros(2))
        np.testing.assert_allclose(state.distribution(), np.full(3, 1.0 / 3.0))

    def test_rescale_keeps_distribution(self):
        """Test that dividing by the maximum leaves p unchanged."""
        state = SolverState(np.zeros(2), np.array([1e-200, 3e-200, 2e-200]), 2.0)
        before = state.distribution()
        state.rescale()
        assert state.w.max() == 1.0
        np.testing.assert_allclose(state.distribution(), before)

    def test_set_primal_projects(self):
        """Test that x is the projection of y."""
        state = SolverState.initial(1, 2, 2.0)
        state.set_primal(np.array([3.0, 4.0]))
        np.testing.assert_allclose(state.x, [0.6, 0.8])


class TestPnormOgdStep:
    """Test the p-norm OGD update."""

    def test_euclidean_step(self):
        """Test that p = 2 reduces to y + iota·u."""
        y = np.array([0.1, 0.2])
        np.testing.assert_allclose(pnorm_ogd_step(y, [0.6, -0.8], 0.5, 2.0), [0.4, -0.2])

    def test_general_p(self):
        """Test sgn(u)|u|^(p-1)/‖u‖_p^(p-2) for p = 3."""
        u = np.array([0.5, -0.25])
        norm = lq_norm(u, 3.0)
        expected = 0.1 * np.sign(u) * np.abs(u) ** 2 / norm
        np.testing.assert_allclose(pnorm_ogd_step(np.zeros(2), u, 0.1, 3.0), expected)

    def test_zero_gradient(self):
        """Test that u = 0 raises."""
        with pytest.raises(LqGameZeroGradientError):
            pnorm_ogd_step(np.zeros(2), np.zeros(2), 0.1, 2.0)

    def test_gradient_outside_ball(self):
        """Test that ‖u‖_p > 1 + 1e-9 raises."""
        with pytest.raises(LqGameUsageError):
            pnorm_ogd_step(np.zeros(2), [1.0, 1.0], 0.1, 2.0)


class TestMwuStep:
    """Test the multiplicative weights update."""

    def test_factor(self):
        """Test w·(1 - eta·v + eta²·v²)."""
        updated = mwu_step(np.ones(2), [1.0, -1.0], 0.5)
        np.testing.assert_allclose(updated, [0.75, 1.75])

    def test_weights_stay_positive(self):
        """Test that the factor never drops below 3/4 at the clip threshold."""
        eta = 0.3
        v = np.linspace(-1.0 / eta, 1.0 / eta, 101)
        assert mwu_step(np.ones(101), v, eta).min() >= 0.75 - 1e-12

    def test_estimate_above_threshold(self):
        """Test that |v| > 1/eta is rejected."""
        with pytest.raises(LqGameUsageError):
            mwu_step(np.ones(1), [3.0], 0.5)


class TestRegret:
    """Test the p-norm OGD regret bound sqrt(2T/(q-1))."""

    @pytest.mark.parametrize("seed", range(5))
    def test_arbitrary_sequences_euclidean(self, seed):
        """Test the bound on random gradient sequences for q = 2."""
        generator = np.random.default_rng(seed)
        gradients = generator.normal(size=(300, 6))
        gradients /= np.linalg.norm(gradients, axis=1)[:, None]
        regret, bound = regret_run(gradients, 2.0)
        assert regret <= bound

    @pytest.mark.parametrize("q", [1.25, 1.5, 2.0])
    @pytest.mark.parametrize("seed", range(3))
    def test_drifting_sequences(self, q, seed):
        """Test the bound on noisy sequences around a fixed direction."""
        p = NormPair(q).p
        generator = np.random.default_rng(100 + seed)
        direction = generator.normal(size=6)
        gradients = direction + 0.5 * generator.normal(size=(300, 6))
        gradients /= np.array([lq_norm(u, p) for u in gradients])[:, None]
        regret, bound = regret_run(gradients, q)
        assert regret <= bound

    def test_constant_sequence(self):
        """Test that a repeated gradient has regret about half the bound."""
        gradients = np.tile([0.6, 0.8], (200, 1))
        regret, bound = regret_run(gradients, 2.0)
        assert 0.0 <= regret <= bound


class TestSolveLqL1:
    """Test the sampled ℓq-ℓ1 solver."""

    def test_query_accounting(self, identity_instance):
        """Test T·d row reads plus one column read per iteration after the first."""
        report = solve_lq_l1(identity_instance, 2.0, 0.5, seed=1)
        T = report.params.T
        assert report.iterations == T
        assert report.queries == T * 2 + (T - 1) * 2
        assert report.queries <= report.query_budget == T * 4
        assert identity_instance.queries == report.queries

    def test_first_iteration_has_no_column_draw(self, identity_instance):
        """Test that x_1 = 0 leaves j_1 unset."""
        report = solve_lq_l1(identity_instance, 2.0, 0.5, seed=1)
        assert report.j_trace[0] == -1
        assert np.all(report.j_trace[1:] >= 0)

    def test_evaluation_not_charged(self, identity_instance):
        """Test that primal_value is evaluated on a separate counter."""
        report = solve_lq_l1(identity_instance, 2.0, 0.5, seed=1)
        assert report.evaluation_queries == 4
        assert identity_instance.queries == report.queries

    def test_deterministic(self, identity_instance):
        """Test that the same seed reproduces traces and x̄."""
        first = solve_lq_l1(identity_instance.fork(), 2.0, 0.5, seed=8)
        second = solve_lq_l1(identity_instance.fork(), 2.0, 0.5, seed=8)
        np.testing.assert_array_equal(first.i_trace, second.i_trace)
        np.testing.assert_array_equal(first.j_trace, second.j_trace)
        np.testing.assert_array_equal(first.x_bar, second.x_bar)

    def test_x_bar_in_ball(self, random_instance):
        """Test that the average iterate stays in B_q."""
        report = solve_lq_l1(random_instance, 1.5, 0.6, seed=2)
        assert report.x_bar_norm(1.5) <= 1.0 + 1e-12
        np.testing.assert_allclose(report.dual_average.sum(), 1.0)

    def test_identity_value(self, identity_instance):
        """Test the value on the identity game for at least two of three seeds."""
        wins = 0
        for seed in range(3):
            report = solve_lq_l1(identity_instance.fork(), 2.0, 0.5, seed=seed)
            wins += report.primal_value >= IDENTITY_VALUE - 0.5
        assert wins >= 2

    def test_hard_instance_value(self, hard_spec_case2):
        """Test the value on a Case-2 hard instance for at least two of three seeds."""
        wins = 0
        for seed in range(3):
            report = solve_lq_l1(build_hard_instance(hard_spec_case2), 2.0, 0.5, seed=seed)
            wins += report.primal_value >= hard_spec_case2.value - 0.5
        assert wins >= 2

    def test_max_iterations(self, random_instance):
        """Test truncated runs and their budget."""
        report = solve_lq_l1(random_instance, 2.0, 0.5, seed=0, max_iterations=10)
        assert report.iterations == 10
        assert report.query_budget == 10 * 11
        assert report.diagnostics == {'truncated': True}
        assert report.to_dict()['diagnostics']['truncated'] is True

    def test_zero_row_skips_primal_step(self):
        """Test that an all-zero row leaves y unchanged and the run completes."""
        instance = GameInstance(DenseStorage(np.zeros((2, 3))), p=2.0)
        report = solve_lq_l1(instance, 2.0, 0.9, seed=0)
        np.testing.assert_array_equal(report.x_bar, np.zeros(3))
        assert np.all(report.j_trace == -1)
        assert report.primal_value == 0.0

    def test_rows_in_wrong_ball(self):
        """Test that rows bounded only in ℓ4 cannot be played with q = 2."""
        instance = GameInstance(GeneratorStorage(2, 2, lambda i, j: 0.1), p=4.0)
        with pytest.raises(LqGameUsageError):
            solve_lq_l1(instance, 2.0, 0.5)

    def test_to_dict(self, identity_instance):
        """Test exported keys and optional traces."""
        report = solve_lq_l1(identity_instance, 2.0, 0.9, seed=0)
        data = report.to_dict(include_traces=True)
        assert data['path'] == "lq-l1"
        assert len(data['x_bar']) == 2
        assert len(data['traces']['i']) == report.iterations
        assert 'traces' not in report.to_dict()


class TestL1Solver:
    """Test the ℓ1-ℓ1 solver."""

    def test_params(self):
        """Test T' = ceil(64 ln(n+d)/eps²) and eta' = sqrt(ln(n+d)/T')."""
        params = l1_params(2, 2, 0.3)
        expected_T = math.ceil(L1_CONSTANT * math.log(4) / 0.09)
        assert params.T == expected_T
        assert params.eta == pytest.approx(math.sqrt(math.log(4) / expected_T))

    def test_params_validation(self):
        """Test that a non-positive constant is rejected."""
        with pytest.raises(LqGameUsageError):
            l1_params(2, 2, 0.3, l1_constant=0.0)

    def test_budget_and_path(self, identity_instance):
        """Test that every iteration reads one row and one column."""
        report = run_l1_l1(identity_instance, 0.3, seed=0)
        assert report.path == "l1-l1"
        assert report.queries == report.params.T * 4
        assert lq_norm(report.x_bar, 1.0) <= 1.0 + 1e-12

    def test_identity_value(self, identity_instance):
        """Test the ℓ1 value 1/2 of the identity game for at least two of three seeds."""
        wins = sum(
            run_l1_l1(identity_instance.fork(), 0.3, seed=seed).primal_value >= 0.5 - 0.3
            for seed in range(3)
        )
        assert wins >= 2

    def test_entry_above_one_is_rejected(self):
        """Test that a sampled entry above 1 in magnitude stops the run."""
        instance = GameInstance(GeneratorStorage(2, 2, lambda i, j: -1.5), p=2.0)
        with pytest.raises(LqGameInstanceError, match="magnitude 1.5"):
            run_l1_l1(instance, 0.5, seed=0, l1_constant=8.0)

    def test_check_entries(self):
        """Test the entry bound with its slack and on NaN."""
        check_entries(np.array([0.2, -1.0 - 1e-10]), "Row", 0)
        check_entries(np.array([]), "Column", 3)
        with pytest.raises(LqGameInstanceError):
            check_entries(np.array([0.2, 1.001]), "Row", 1)
        with pytest.raises(LqGameInstanceError):
            check_entries(np.array([np.nan]), "Column", 0)

    def test_solve_l1_l1_returns_vector(self, identity_instance):
        """Test the vector-returning wrapper."""
        x = solve_l1_l1(identity_instance, 0.5, seed=1, l1_constant=8.0)
        assert x.shape == (2,)


class TestDispatch:
    """Test solver selection."""

    def test_threshold(self):
        """Test log(d)/eps in both bases."""
        assert dispatch_threshold(1000, 0.1) == pytest.approx(math.log(1000) / 0.1)
        assert dispatch_threshold(1024, 0.5, "2") == pytest.approx(20.0)

    def test_bad_base(self):
        """Test that unknown bases are rejected."""
        with pytest.raises(LqGameUsageError):
            dispatch_threshold(10, 0.1, "10")

    def test_choose_path(self):
        """Test both branches of the rule p > log(d)/eps."""
        assert choose_path(NormPair(1.01).p, 1000, 0.1) == PATH_L1
        assert choose_path(2.0, 1000, 0.1) == PATH_LQ

    def test_l1_route_doubles_accepted_error(self, identity_instance):
        """Test that the ℓ1 route reports 2·eps as its accepted error."""
        report = solve_dispatch(identity_instance, 1.01, 0.3, seed=0)
        assert report.path == PATH_L1
        assert report.accepted_error == pytest.approx(0.6)
        assert report.params.q == 1.01

    def test_lq_route(self, random_instance):
        """Test that p below log(d)/eps runs the ℓq-ℓ1 solver."""
        report = solve_dispatch(random_instance, 2.0, 0.8, seed=0)
        assert report.path == PATH_LQ
        assert report.accepted_error == pytest.approx(0.8)


class TestBudgetCheck:
    """Test the internal query-budget invariant."""

    def test_overspending_instance_raises(self, mocker):
        """Test that a run charging more than T·(n+d) is an internal error."""
        instance = GameInstance(DenseStorage(np.eye(2) * 0.5), p=2.0)
        original = instance.query_row

        def greedy_row(i):
            instance.counter.charge(100)
            return original(i)

        mocker.patch.object(instance, "query_row", side_effect=greedy_row)
        with pytest.raises(LqGameInternalError):
            solve_lq_l1(instance, 2.0, 0.9, seed=0)
