"""Pytest configuration and shared fixtures for lqgame tests.

This module provides:
- Small dense instances with known game values
- Hard-instance specifications
- Instance and data files written to a temporary directory

Note: Acceptance-scale fixtures are in tests/integration/conftest.py
"""

import numpy as np
import pytest

from lqgame.adversarial import CASE_1, CASE_2, HardInstanceSpec
from lqgame.instance import GameInstance, normalize_rows
from lqgame.storage.dense import DenseStorage


@pytest.fixture
def identity_instance():
    """2 x 2 identity game, value 1/sqrt(2) for q = 2.

    :returns: Dense GameInstance with p = 2
    """
    return GameInstance(DenseStorage(np.eye(2)), p=2.0)


@pytest.fixture
def random_instance():
    """Seeded 6 x 5 instance with rows scaled into the ℓ2 unit ball.

    :returns: Dense GameInstance with p = 2
    """
    generator = np.random.default_rng(7)
    return normalize_rows(generator.normal(size=(6, 5)), p=2.0)


@pytest.fixture
def hard_spec_case2():
    """Case-2 hard instance with n = d = 4 and hidden column 2.

    :returns: HardInstanceSpec
    """
    return HardInstanceSpec(CASE_2, n=4, d=4, l=2, p=2.0)


@pytest.fixture
def hard_spec_case1():
    """Case-1 hard instance with n = d = 4, hidden column 1 and special row 3.

    :returns: HardInstanceSpec
    """
    return HardInstanceSpec(CASE_1, n=4, d=4, l=1, k=3, p=2.0)


@pytest.fixture
def identity_csv(tmp_path):
    """Identity game written in the CSV instance format.

    :returns: Path to the file
    """
    path = tmp_path / "identity.csv"
    path.write_text("2,2,2.0\n1.0,0.0\n0.0,1.0\n")
    return path


@pytest.fixture
def hard_stanza_file(tmp_path, hard_spec_case2):
    """Case-2 spec written as a one-line stanza file.

    :returns: Path to the file
    """
    path = tmp_path / "hard.txt"
    path.write_text(hard_spec_case2.to_stanza() + "\n")
    return path
