"""Oracle-call accounting and the noisy norm-estimate model"""

import functools
import math

import numpy as np
from scipy.stats import binom

from lqgame.constants import C_AE, NORM_SUCCESS_PROBABILITY
from lqgame.estimator import RngStream
from lqgame.exceptions import LqGameUsageError

STATE_PREP = "state_prep"
NORM_ESTIMATION = "norm_estimation"
MIN_FINDING = "min_finding"
DUAL_PREP = "dual_prep"

CATEGORIES = (STATE_PREP, NORM_ESTIMATION, MIN_FINDING, DUAL_PREP)

FAILURE_MODES = ("uniform", "zero", "double")


class QueryLedger:
    """Per-subroutine tallies of charged oracle invocations.

        ``dual_prep`` counts invocations of the weight oracle O_t. One O_t
        call at iteration t replays the t sampled columns and costs 2t
        calls to the matrix oracle; :attr:`expanded_oracle_calls` reports
        the total in matrix-oracle units.
    """

    def __init__(self) -> None:
        self.breakdown = {category: 0 for category in CATEGORIES}
        self._expanded_dual = 0

    def charge(self, category: str, amount: int) -> None:
        if category not in self.breakdown:
            raise LqGameUsageError(f"Unknown ledger category {category!r}")
        if amount < 0:
            raise LqGameUsageError("Ledger charges are non-negative")
        self.breakdown[category] += int(amount)

    def charge_dual(self, amount: int, t: int) -> None:
        """Charge O_t invocations made at iteration t (1-based)."""
        self.charge(DUAL_PREP, amount)
        self._expanded_dual += 2 * int(t) * int(amount)

    @property
    def oracle_calls(self) -> int:
        return sum(self.breakdown.values())

    @property
    def expanded_oracle_calls(self) -> int:
        return self.oracle_calls - self.breakdown[DUAL_PREP] + self._expanded_dual

    def merge(self, other: 'QueryLedger') -> None:
        for category in CATEGORIES:
            self.breakdown[category] += other.breakdown[category]
        self._expanded_dual += other._expanded_dual

    def to_dict(self) -> dict:
        return {
            'oracle_calls': self.oracle_calls,
            'expanded_oracle_calls': self.expanded_oracle_calls,
            'breakdown': dict(self.breakdown),
        }

    def __repr__(self) -> str:
        return "QueryLedger(oracle_calls={}, breakdown={!r})".format(self.oracle_calls, self.breakdown)


class NoisyEstimate:
    """Estimate m̃ of a non-negative quantity m with relative bound δ.

        :param value: Reported estimate m̃
        :param relative_bound: δ
        :param confidence: Probability that |m̃ - m| <= δ·m
        :param within_bound: Whether this draw satisfies the bound
    """

    def __init__(self, value: float, relative_bound: float, confidence: float,
                 within_bound: bool) -> None:
        self.value = float(value)
        self.relative_bound = float(relative_bound)
        self.confidence = float(confidence)
        self.within_bound = bool(within_bound)

    def __repr__(self) -> str:
        return "NoisyEstimate(value={!r}, relative_bound={!r}, within_bound={})".format(
            self.value, self.relative_bound, self.within_bound)


@functools.lru_cache(maxsize=64)
def median_confidence(boost: int) -> float:
    """Probability that the median of ``boost`` draws lands on a success draw."""
    # median is inside the success window once more than half the draws succeed
    return float(binom.sf(boost // 2, boost, NORM_SUCCESS_PROBABILITY))


def estimate_charge(dims: int, delta: float, boost: int = 1) -> int:
    """boost·ceil(C_AE·sqrt(dims)/δ)."""
    return int(boost) * int(math.ceil(C_AE * math.sqrt(dims) / delta))


def simulate_norm_estimate(true_value: float, delta: float, boost: int, dims: int,
                           rng: RngStream, failure_mode: str = "uniform") -> tuple:
    """Median of ``boost`` noisy estimates of m = true_value.

        Each repetition succeeds with probability 2/3 and then reports a
        value uniform in [m(1-δ), m(1+δ)]. A failed repetition reports a
        value uniform in [0, 2m] (``"uniform"``), exactly 0 (``"zero"``) or
        exactly 2m (``"double"``).

        :param true_value: m >= 0
        :param delta: Relative error in (0, 1)
        :param boost: Number of repetitions >= 1
        :param dims: Dimension entering the sqrt(dims)/δ charge
        :param rng: Random stream
        :param failure_mode: One of ``FAILURE_MODES``

        :returns: (NoisyEstimate, charged_queries)
        :rtype: tuple
    """
    if not 0.0 < delta < 1.0:
        raise LqGameUsageError(f"delta must be in (0, 1), got {delta}")
    if boost < 1:
        raise LqGameUsageError(f"boost must be >= 1, got {boost}")
    if true_value < 0:
        raise LqGameUsageError(f"true_value must be non-negative, got {true_value}")
    if failure_mode not in FAILURE_MODES:
        raise LqGameUsageError(f"failure_mode must be one of {FAILURE_MODES}, got {failure_mode!r}")

    generator = rng.generator
    m = float(true_value)
    success = generator.random(boost) < NORM_SUCCESS_PROBABILITY
    draws = generator.uniform(m * (1.0 - delta), m * (1.0 + delta), boost)
    if failure_mode == "uniform":
        failures = generator.uniform(0.0, 2.0 * m, boost)
    elif failure_mode == "zero":
        failures = np.zeros(boost)
    else:
        failures = np.full(boost, 2.0 * m)
    values = np.where(success, draws, failures)
    value = float(np.median(values))
    within = abs(value - m) <= delta * m
    estimate = NoisyEstimate(value, delta, median_confidence(boost), within)
    return estimate, estimate_charge(dims, delta, boost)
