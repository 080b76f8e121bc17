"""Sampled ℓ1-ℓ1 game solver

    Both players run exponentiated weights on sampled payoffs. The primal
    ball B_1 is the convex hull of the 2d signed vertices ±e_j, so the
    primal player keeps a distribution r over those vertices and
    x = r(+) - r(-). Per iteration the dual samples a row i (d queries)
    that the primal learns from, and the primal samples a vertex ±e_j
    whose column (n queries) the dual learns from.

    T' = ceil(c·ln(n + d) / eps²), eta' = sqrt(ln(n + d) / T').
"""

import logging
import math
import time

import numpy as np

from lqgame.constants import L1_CONSTANT, LOG_EVERY, ROW_NORM_SLACK
from lqgame.estimator import RngStream, categorical_sample
from lqgame.exceptions import LqGameInstanceError, LqGameInternalError, LqGameUsageError
from lqgame.oracles import primal_value
from lqgame.solver.params import SolverParams
from lqgame.solver.report import SolveReport

logger = logging.getLogger(__name__)


def l1_params(n: int, d: int, epsilon: float, seed: int = 0,
              l1_constant: float = L1_CONSTANT, pair=None) -> SolverParams:
    """Iteration count and step of the ℓ1-ℓ1 solver.

        :raises LqGameUsageError: If epsilon is not in (0, 1) or l1_constant <= 0
    """
    if not 0.0 < epsilon < 1.0:
        raise LqGameUsageError(f"epsilon must be in (0, 1), got {epsilon}")
    if not l1_constant > 0:
        raise LqGameUsageError(f"l1_constant must be positive, got {l1_constant}")
    log_size = math.log(n + d)
    T = math.ceil(l1_constant * log_size / epsilon ** 2)
    eta = math.sqrt(log_size / T)
    return SolverParams(pair, epsilon, T, eta, 0.0, seed)


def _softmax(logits: np.ndarray) -> np.ndarray:
    weights = np.exp(logits - logits.max())
    return weights / weights.sum()


def check_entries(values: np.ndarray, kind: str, index: int) -> None:
    """Reject a sampled row or column with an entry above 1 in magnitude.

        :raises LqGameInstanceError: If max |A_ij| exceeds 1 + 1e-9
    """
    largest = float(np.max(np.abs(values))) if values.size else 0.0
    if not largest <= 1.0 + ROW_NORM_SLACK:
        logger.error("%s %d has an entry of magnitude %.12g", kind, index, largest)
        raise LqGameInstanceError(f"{kind} {index} has an entry of magnitude {largest:.12g} > 1")


def run_l1_l1(instance, epsilon: float, seed: int = 0,
              l1_constant: float = L1_CONSTANT, pair=None) -> SolveReport:
    """Solve max over B_1 of min_i A_i·x and return a full report.

        :param instance: Game instance with entries bounded by 1 in magnitude
        :param epsilon: Additive error in (0, 1)
        :param seed: RNG seed
        :param l1_constant: The constant c in T'
        :param pair: Norm pair recorded in the report (dispatcher use)

        :returns: Report with ``path="l1-l1"``
        :rtype: SolveReport

        :raises LqGameInstanceError: If a sampled entry exceeds 1 in magnitude
    """
    n, d = instance.n, instance.d
    if n < 1 or d < 1:
        raise LqGameUsageError(f"Instance must be non-empty, got shape {instance.shape}")
    params = l1_params(n, d, epsilon, seed, l1_constant, pair)
    rng = RngStream(seed)
    budget = params.T * (n + d)
    logger.info("run_l1_l1 n=%d d=%d T=%d eta=%.6g", n, d, params.T, params.eta)

    log_p = np.zeros(n)
    log_r = np.zeros(2 * d)
    x_sum = np.zeros(d)
    p_sum = np.zeros(n)
    i_trace = np.empty(params.T, dtype=np.int64)
    j_trace = np.empty(params.T, dtype=np.int64)
    start_queries = instance.queries
    started = time.perf_counter()

    for t in range(params.T):
        p_dist = _softmax(log_p)
        r_dist = _softmax(log_r)
        x_sum += r_dist[:d] - r_dist[d:]
        p_sum += p_dist

        i = categorical_sample(p_dist, rng)
        vertex = categorical_sample(r_dist, rng)
        j, sign = (vertex, 1.0) if vertex < d else (vertex - d, -1.0)
        i_trace[t] = i
        j_trace[t] = j

        row = instance.query_row(i)
        column = instance.query_column(j)
        check_entries(row, "Row", i)
        check_entries(column, "Column", j)
        # primal maximises, dual minimises
        log_r[:d] += params.eta * row
        log_r[d:] -= params.eta * row
        log_p -= params.eta * sign * column

        if (t + 1) % LOG_EVERY == 0:
            logger.debug("t=%d queries=%d", t + 1, instance.queries - start_queries)

    wall_time = time.perf_counter() - started
    queries = instance.queries - start_queries
    if queries > budget:
        raise LqGameInternalError(f"Run used {queries} queries, budget is {budget}")

    x_bar = x_sum / params.T
    evaluation = instance.fork()
    value = primal_value(evaluation, x_bar)
    report = SolveReport(x_bar, i_trace, j_trace, value, queries, wall_time, params,
                         path="l1-l1", evaluation_queries=evaluation.queries,
                         dual_average=p_sum / params.T, query_budget=budget)
    logger.info("run_l1_l1 done: %s", report)
    return report


def solve_l1_l1(instance, epsilon: float, seed: int = 0,
                l1_constant: float = L1_CONSTANT) -> np.ndarray:
    """x̄ in B_1 with min_i A_i·x̄ >= max over B_1 of min_i A_i·x - epsilon (w.p. >= 2/3).

        :returns: Average primal point
        :rtype: numpy.ndarray
    """
    return run_l1_l1(instance, epsilon, seed, l1_constant).x_bar
