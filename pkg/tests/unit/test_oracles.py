"""Tests for the dense reference oracles.

This module tests:
- Best responses over the ℓq ball
- Dense primal evaluation and duality gaps
- Certified game values against closed forms
- Iteration-cap behaviour
"""

import numpy as np
import pytest

from lqgame.adversarial import CASE_1, CASE_2, HardInstanceSpec, build_hard_instance, sigma_case1
from lqgame.exceptions import LqGameConvergenceError, LqGameUsageError
from lqgame.instance import normalize_rows
from lqgame.norms import NormPair, lq_norm
from lqgame.oracles import (
    ValueCertificate,
    best_response_x,
    duality_gap,
    game_value_exact,
    primal_value,
)
from lqgame.solver.classical import solve_lq_l1


class TestBestResponse:
    """Test the maximiser of yᵀx over B_q."""

    @pytest.mark.parametrize("q", [1.2, 1.5, 2.0])
    def test_attains_dual_norm(self, q):
        """Test ‖x‖_q = 1 and yᵀx = ‖y‖_p."""
        y = np.array([0.3, -1.2, 0.7, 0.05])
        x = best_response_x(y, q)
        assert lq_norm(x, q) == pytest.approx(1.0)
        assert float(y @ x) == pytest.approx(lq_norm(y, NormPair(q).p))

    def test_zero(self):
        """Test that the zero vector maps to zero."""
        np.testing.assert_array_equal(best_response_x(np.zeros(3), 1.5), np.zeros(3))


class TestPrimalValue:
    """Test dense evaluation of min_i A_i·x."""

    def test_value_and_charge(self, identity_instance):
        """Test the identity game at (0.6, 0.8)."""
        assert primal_value(identity_instance, [0.6, 0.8]) == pytest.approx(0.6)
        assert identity_instance.queries == 4

    def test_length_mismatch(self, identity_instance):
        """Test that x of the wrong length is rejected."""
        with pytest.raises(LqGameUsageError):
            primal_value(identity_instance, [1.0, 0.0, 0.0])


class TestDualityGap:
    """Test the duality gap."""

    def test_non_negative(self, random_instance):
        """Test that feasible pairs have a non-negative gap."""
        generator = np.random.default_rng(3)
        for _ in range(10):
            x = generator.normal(size=5)
            x /= lq_norm(x, 1.5)
            p_dist = generator.random(6)
            p_dist /= p_dist.sum()
            assert duality_gap(random_instance.fork(), x, p_dist, 1.5) >= -1e-12

    def test_rejects_infeasible_x(self, identity_instance):
        """Test that x outside B_q is rejected."""
        with pytest.raises(LqGameUsageError):
            duality_gap(identity_instance, [1.0, 1.0], [0.5, 0.5], 2.0)

    def test_rejects_non_simplex(self, identity_instance):
        """Test that p off the simplex is rejected."""
        with pytest.raises(LqGameUsageError):
            duality_gap(identity_instance, [0.5, 0.5], [0.7, 0.7], 2.0)


class TestGameValueExact:
    """Test certified values."""

    def test_identity(self, identity_instance):
        """Test the identity game, certified at the first check."""
        certificate = game_value_exact(identity_instance, 2.0, tol=1e-8)
        assert certificate.lower <= 2.0 ** -0.5 + 1e-12
        assert certificate.upper >= 2.0 ** -0.5 - 1e-12
        assert certificate.gap <= 1e-8
        assert certificate.iterations_used == 1

    @pytest.mark.parametrize("q", [1.25, 1.5, 2.0])
    def test_case2_closed_form(self, q):
        """Test that the certificate brackets 2^(-1/p) on a Case-2 instance."""
        pair = NormPair(q)
        spec = HardInstanceSpec(CASE_2, n=4, d=3, l=1, p=pair.p)
        certificate = game_value_exact(build_hard_instance(spec), q)
        assert certificate.lower - 1e-9 <= spec.value <= certificate.upper + 1e-9
        assert certificate.value == pytest.approx(spec.value, abs=1e-4)

    @pytest.mark.parametrize("q", [1.25, 1.5, 2.0])
    def test_case1_closed_form(self, q):
        """Test that the certificate brackets σ1 on a Case-1 instance."""
        pair = NormPair(q)
        spec = HardInstanceSpec(CASE_1, n=4, d=3, l=2, k=2, p=pair.p)
        certificate = game_value_exact(build_hard_instance(spec), q)
        assert certificate.lower - 1e-9 <= sigma_case1(q) <= certificate.upper + 1e-9
        assert certificate.value == pytest.approx(sigma_case1(q), abs=1e-4)

    def test_weak_duality_with_solver(self):
        """Test that the solver never beats the certified upper bound."""
        generator = np.random.default_rng(21)
        instance = normalize_rows(generator.uniform(0.1, 1.0, size=(6, 5)), p=2.0)
        certificate = game_value_exact(instance.fork(), 2.0, tol=1e-3)
        report = solve_lq_l1(instance.fork(), 2.0, 0.8, seed=0)
        assert report.primal_value <= certificate.upper + 1e-9
        assert certificate.x is not None
        assert lq_norm(certificate.x, 2.0) <= 1.0 + 1e-9

    def test_iteration_cap(self, random_instance):
        """Test that hitting the cap raises with the best certificate attached."""
        with pytest.raises(LqGameConvergenceError) as excinfo:
            game_value_exact(random_instance, 2.0, tol=1e-15, max_iter=3)
        certificate = excinfo.value.certificate
        assert isinstance(certificate, ValueCertificate)
        assert certificate.lower <= certificate.upper

    def test_seeded_start(self, identity_instance):
        """Test that a perturbed starting point still certifies."""
        certificate = game_value_exact(identity_instance, 2.0, tol=1e-4, seed=5)
        assert certificate.value == pytest.approx(2.0 ** -0.5, abs=1e-4)

    def test_bad_tolerance(self, identity_instance):
        """Test that tol <= 0 is rejected."""
        with pytest.raises(LqGameUsageError):
            game_value_exact(identity_instance, 2.0, tol=0.0)


class TestValueCertificate:
    """Test certificate export."""

    def test_to_dict(self):
        """Test gap and midpoint."""
        certificate = ValueCertificate(0.4, 0.5, iterations_used=7)
        assert certificate.to_dict() == {'lower': 0.4, 'upper': 0.5, 'gap': pytest.approx(0.1),
                                         'iterations_used': 7}
        assert certificate.value == pytest.approx(0.45)
        assert "gap" in str(certificate)
