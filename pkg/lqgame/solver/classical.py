"""Sublinear ℓq-ℓ1 game solver

    The primal player runs p-norm online gradient ascent on the sampled row
    A_{i_t}; the dual player runs multiplicative weights on clipped
    importance-sampled estimates of A x_t. Each iteration reads one row
    (d entries) and one column (n entries), so a run costs at most
    T·(n + d) queries.
"""

import logging
import time

import numpy as np

from lqgame.constants import LOG_EVERY, MWU_MIN_FACTOR, RESCALE_EVERY, ROW_NORM_SLACK
from lqgame.estimator import RngStream, categorical_sample, clip, estimate_scale, lq_sample
from lqgame.exceptions import (
    LqGameInternalError,
    LqGameUsageError,
    LqGameZeroGradientError,
)
from lqgame.norms import NormPair, as_vector, lq_norm, sgnpow
from lqgame.oracles import primal_value
from lqgame.solver.params import SolverParams, SolverState
from lqgame.solver.report import SolveReport

logger = logging.getLogger(__name__)


def pnorm_ogd_step(y, u, iota: float, p: float) -> np.ndarray:
    """One p-norm online gradient step: y + iota·sgn(u)|u|^(p-1) / ‖u‖_p^(p-2).

        Evaluated as iota·‖u‖_p·sgnpow(u/‖u‖_p, p-1), which is the same
        quantity without overflow for large p.

        :param y: Current unprojected primal vector
        :param u: Gradient with ‖u‖_p <= 1 + 1e-9
        :param iota: Step size
        :param p: Gradient-side exponent >= 2

        :returns: Updated vector (new array)
        :rtype: numpy.ndarray

        :raises LqGameZeroGradientError: If u = 0
        :raises LqGameUsageError: If ‖u‖_p exceeds 1 + 1e-9
    """
    u = np.asarray(u, dtype=np.float64)
    norm = lq_norm(u, p)
    if norm == 0.0:
        raise LqGameZeroGradientError("OGD step with a zero gradient")
    if norm > 1.0 + ROW_NORM_SLACK:
        raise LqGameUsageError(f"Gradient norm {norm:.12g} exceeds 1")
    return np.asarray(y, dtype=np.float64) + iota * norm * sgnpow(u / norm, p - 1.0)


def mwu_step(w, v, eta: float) -> np.ndarray:
    """Multiplicative weights update w_i·(1 - eta·v_i + eta²·v_i²).

        The factor is at least 3/4 for every real v_i, so weights stay
        strictly positive.

        :param w: Positive weights
        :param v: Estimates with |v_i| <= 1/eta
        :param eta: Step size >= 0

        :returns: Updated weights (new array)
        :rtype: numpy.ndarray

        :raises LqGameUsageError: If some |v_i| exceeds 1/eta
    """
    v = np.asarray(v, dtype=np.float64)
    scaled = eta * v
    if np.any(np.abs(scaled) > 1.0 + ROW_NORM_SLACK):
        raise LqGameUsageError("Estimates exceed the clip threshold 1/eta")
    factor = 1.0 - scaled + scaled * scaled
    if factor.size and float(factor.min()) < MWU_MIN_FACTOR - ROW_NORM_SLACK:
        raise LqGameInternalError(f"MWU factor {float(factor.min())} below 3/4")
    return np.asarray(w, dtype=np.float64) * factor


def check_instance(instance, pair: NormPair) -> None:
    """Reject empty instances and rows not bounded in the ℓp norm of q."""
    if instance.n < 1 or instance.d < 1:
        raise LqGameUsageError(f"Instance must be non-empty, got shape {instance.shape}")
    if instance.p > pair.p + ROW_NORM_SLACK:
        raise LqGameUsageError(
            f"Rows are bounded in ℓ{instance.p:g}, solving with q={pair.q:g} needs them in ℓ{pair.p:g}")


def solve_lq_l1(instance, q: float, epsilon: float, seed: int = 0,
                max_iterations: int = None) -> SolveReport:
    """Approximately solve max over B_q of min_i A_i·x.

        With probability at least 2/3 the returned x̄ satisfies
        min_i A_i·x̄ >= σ - epsilon.

        :param instance: Game instance with rows in the ℓp unit ball
        :param q: Primal exponent in (1, 2]
        :param epsilon: Additive error in (0, 1)
        :param seed: RNG seed
        :param max_iterations: Stop after this many iterations (scaling sweeps
            only; the error guarantee needs the full T)

        :returns: Report with x̄, traces and query accounting
        :rtype: SolveReport

        :raises LqGameUsageError: On an empty instance or bad parameters
    """
    pair = NormPair(q)
    check_instance(instance, pair)
    n, d = instance.n, instance.d
    params = SolverParams.derive(n, pair, epsilon, seed)
    rng = RngStream(seed)
    state = SolverState.initial(n, d, pair.q)
    threshold = params.clip_threshold
    iterations = params.T if max_iterations is None else max(1, min(params.T, int(max_iterations)))
    budget = iterations * (n + d)

    logger.info("solve_lq_l1 n=%d d=%d %r", n, d, params)

    x_sum = np.zeros(d)
    p_sum = np.zeros(n)
    i_trace = np.empty(iterations, dtype=np.int64)
    j_trace = np.full(iterations, -1, dtype=np.int64)
    zero_v = np.zeros(n)
    start_queries = instance.queries
    started = time.perf_counter()

    for t in range(iterations):
        state.t = t + 1
        x = state.x
        x_sum += x
        p_sum += state.distribution()

        i = categorical_sample(state.w, rng)
        i_trace[t] = i
        row = instance.query_row(i)
        try:
            new_y = pnorm_ogd_step(state.y, row, params.iota, pair.p)
        except LqGameZeroGradientError:
            new_y = state.y

        if np.any(x):
            j = lq_sample(x, pair.q, rng)
            j_trace[t] = j
            v = clip(instance.query_column(j) * estimate_scale(x, j, pair.q), threshold)
        else:
            # x_t = 0: A x_t = 0 exactly, no draw needed
            v = zero_v

        state.w = mwu_step(state.w, v, params.eta)
        state.set_primal(new_y)
        if (t + 1) % RESCALE_EVERY == 0:
            state.rescale()
        if (t + 1) % LOG_EVERY == 0:
            logger.debug("t=%d ‖y‖_q=%.6f queries=%d", t + 1, lq_norm(state.y, pair.q),
                         instance.queries - start_queries)

    wall_time = time.perf_counter() - started
    queries = instance.queries - start_queries
    if queries > budget:
        raise LqGameInternalError(f"Run used {queries} queries, budget is {budget}")

    x_bar = x_sum / iterations
    evaluation = instance.fork()
    value = primal_value(evaluation, x_bar)
    diagnostics = {'truncated': True} if iterations < params.T else None
    report = SolveReport(x_bar, i_trace, j_trace, value, queries, wall_time, params,
                         path="lq-l1", evaluation_queries=evaluation.queries,
                         dual_average=p_sum / iterations, query_budget=budget,
                         diagnostics=diagnostics)
    logger.info("solve_lq_l1 done: %s", report)
    return report


def regret_run(gradients, q: float, iota: float = None) -> tuple:
    """Play p-norm OGD against a fixed sequence of gradients.

        Used to check the regret bound max over B_q of Σ u_tᵀx - Σ u_tᵀx_t
        <= sqrt(2T/(q-1)), where the maximum equals ‖Σ u_t‖_p.

        :param gradients: T x d array, rows with ‖u_t‖_p <= 1
        :param q: Primal exponent in (1, 2]
        :param iota: Step, defaults to sqrt((q-1)/(2T))

        :returns: (regret, bound)
        :rtype: tuple
    """
    pair = NormPair(q)
    gradients = np.asarray(gradients, dtype=np.float64)
    T = gradients.shape[0]
    if iota is None:
        iota = float(np.sqrt((pair.q - 1.0) / (2.0 * T)))
    state = SolverState.initial(1, gradients.shape[1], pair.q)
    earned = 0.0
    for u in gradients:
        earned += float(u @ state.x)
        try:
            state.set_primal(pnorm_ogd_step(state.y, u, iota, pair.p))
        except LqGameZeroGradientError:
            pass
    best = lq_norm(as_vector(gradients.sum(axis=0), "Σu"), pair.p)
    return best - earned, float(np.sqrt(2.0 * T / (pair.q - 1.0)))
