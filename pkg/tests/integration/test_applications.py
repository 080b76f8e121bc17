"""Success-rate runs of the Carathéodory and SVM reductions."""

import numpy as np
import pytest

from lqgame.applications.caratheodory import caratheodory_residual, caratheodory_solve
from lqgame.applications.svm import svm_solve

pytestmark = [pytest.mark.integration, pytest.mark.slow]


class TestCaratheodory:
    """Test sparse approximation of a centroid."""

    def test_random_sphere_vertices(self, seeds, required_successes):
        """Test residual <= eps for the centroid of 20 random ℓ2-unit vertices in R^10."""
        generator = np.random.default_rng(23)
        vertices = generator.normal(size=(20, 10))
        vertices /= np.linalg.norm(vertices, axis=1)[:, None]
        u = vertices.mean(axis=0)
        epsilon = 0.3
        successes = 0
        for seed in seeds:
            combo = caratheodory_solve(vertices, u, p=2.0, epsilon=epsilon, seed=seed)
            assert combo.support_size <= combo.report.iterations
            assert abs(float(np.sum(combo.weights)) - 1.0) < 1e-12
            successes += caratheodory_residual(vertices, u, combo, 2.0) <= epsilon
        assert successes >= required_successes(len(seeds))


class TestSvm:
    """Test margins against closed-form optima."""

    def test_single_point(self, required_successes):
        """Test margin >= 1 - eps for one point over 30 seeds."""
        points = np.array([[1.0, 0.0]])
        labels = np.array([1.0])
        successes = sum(svm_solve(points, labels, 2.0, 0.1, seed=seed).margin_value >= 1.0 - 0.1
                        for seed in range(30))
        assert successes >= required_successes(30)

    def test_two_points(self, seeds, required_successes):
        """Test margin >= 1/2 - eps for e1 and e2 with equal labels."""
        points = np.eye(2)
        labels = np.ones(2)
        successes = sum(svm_solve(points, labels, 2.0, 0.1, seed=seed).margin_value >= 0.5 - 0.1
                        for seed in seeds)
        assert successes >= required_successes(len(seeds))
