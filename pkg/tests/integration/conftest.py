"""Pytest configuration for integration tests.

Acceptance-scale runs: many seeds, full iteration counts. These fixtures
provide:
- Seed ranges for success-rate checks
- Hard-instance and random-instance factories
"""

import numpy as np
import pytest

from lqgame.adversarial import CASE_2, HardInstanceSpec, build_hard_instance
from lqgame.constants import GUARANTEE_SUCCESS_RATE
from lqgame.instance import normalize_rows


@pytest.fixture(scope="session")
def required_successes():
    """Smallest success count meeting the guaranteed rate.

    :returns: Callable runs -> ceil(2/3 · runs)
    """
    return lambda runs: int(np.ceil(GUARANTEE_SUCCESS_RATE * runs - 1e-9))


@pytest.fixture(scope="session")
def seeds():
    """Seeds for success-rate checks.

    :returns: range of 12 seeds
    """
    return range(12)


@pytest.fixture
def case2_instance():
    """Factory for Case-2 hard instances.

    :returns: Callable (n, d, l, p) -> (GameInstance, value)
    """
    def build(n, d, l, p=2.0):
        spec = HardInstanceSpec(CASE_2, n=n, d=d, l=l, p=p)
        return build_hard_instance(spec), spec.value
    return build


@pytest.fixture
def positive_instance():
    """Factory for seeded random instances with positive entries.

    :returns: Callable (seed, n, d, p) -> GameInstance
    """
    def build(seed, n, d, p=2.0):
        generator = np.random.default_rng(seed)
        return normalize_rows(generator.uniform(0.1, 1.0, size=(n, d)), p=p)
    return build
