"""Hard-margin ℓq SVM through the sampled primal-dual loop

    Maximises min_i 2y_i·X_iᵀw - ‖w‖_q^q. Labels are folded into the
    points (X_i <- y_i·X_i). The optimum lies in the ℓq ball of radius
    R = 2^(1/(q-1)), so the primal player runs p-norm OGD confined to that
    ball. The dual player sees the estimate

        2X_i(j)·‖w‖_q^q / (sgn(w_j)|w_j|^(q-1)) - ‖w‖_q^q

    which is unbiased for 2X_iᵀw - ‖w‖_q^q under ℓq-sampling of j. It is
    divided by R' = max(1, R^q + 2R) before clipping at 1/eta.
"""

import logging
import time

import numpy as np

from lqgame.constants import LOG_EVERY, RESCALE_EVERY
from lqgame.estimator import RngStream, categorical_sample, clip, lq_sample
from lqgame.exceptions import (
    LqGameDimensionError,
    LqGameInternalError,
    LqGameUsageError,
    LqGameZeroGradientError,
)
from lqgame.instance import GameInstance
from lqgame.norms import NormPair, lq_norm, sgnpow
from lqgame.solver.classical import mwu_step, pnorm_ogd_step
from lqgame.solver.params import SolverParams, SolverState
from lqgame.solver.report import SolveReport
from lqgame.storage.dense import DenseStorage

logger = logging.getLogger(__name__)


class SvmSolution:
    """Separating direction and its margin objective.

        :param w: Average primal iterate
        :param margin_value: min_i 2y_i·X_iᵀw - ‖w‖_q^q
        :param radius_used: Radius R of the primal ball
        :param report: Solver run behind the solution
    """

    def __init__(self, w, margin_value: float, radius_used: float, report=None) -> None:
        self.w = np.asarray(w, dtype=np.float64)
        self.margin_value = float(margin_value)
        self.radius_used = float(radius_used)
        self.report = report

    @property
    def flagged(self) -> bool:
        """True when the margin is not positive (data possibly unseparable or eps too large)."""
        return self.margin_value <= 0.0

    def to_dict(self) -> dict:
        data = {
            'margin_value': self.margin_value,
            'radius_used': self.radius_used,
            'flagged': self.flagged,
            'w': self.w.tolist(),
        }
        if self.report is not None:
            data['queries'] = self.report.queries
            data['iterations'] = self.report.iterations
            data['params'] = self.report.params.to_dict()
        return data

    def __repr__(self) -> str:
        return "SvmSolution(margin_value={!r}, radius_used={!r}, flagged={})".format(
            self.margin_value, self.radius_used, self.flagged)


def svm_radius(q: float) -> float:
    """2^(1/(q-1)); the optimum never lies outside this ℓq radius."""
    return 2.0 ** (1.0 / (q - 1.0))


def _folded(points, labels) -> np.ndarray:
    points = np.asarray(points, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.float64)
    if points.ndim != 2 or points.size == 0:
        raise LqGameUsageError(f"points must be a non-empty 2-D array, got shape {points.shape}")
    if labels.ndim != 1 or labels.size != points.shape[0]:
        raise LqGameDimensionError(f"{labels.size} labels for {points.shape[0]} points")
    if not np.all(np.isin(labels, (-1.0, 1.0))):
        raise LqGameUsageError("labels must be +1 or -1")
    return points * labels[:, None]


def svm_margin_value(points, labels, w, q: float) -> float:
    """min_i 2y_i·X_iᵀw - ‖w‖_q^q by dense evaluation."""
    folded = _folded(points, labels)
    w = np.asarray(w, dtype=np.float64)
    return float(np.min(2.0 * (folded @ w))) - lq_norm(w, q) ** q


def svm_estimate(column, w, j: int, q: float) -> np.ndarray:
    """Unbiased estimates of 2X_iᵀw - ‖w‖_q^q for all i from column j."""
    mass = float(np.sum(np.abs(w) ** q))
    return 2.0 * column * mass / float(sgnpow(w[j], q - 1.0)) - mass


def svm_solve(points, labels, q: float, epsilon: float, seed: int = 0) -> SvmSolution:
    """Approximately maximise the ℓq margin objective.

        :param points: n x d array, rows in the ℓp unit ball
        :param labels: n labels in {+1, -1}
        :param q: Primal exponent in (1, 2]
        :param epsilon: Additive error in (0, 1)
        :param seed: RNG seed

        :returns: Solution; ``flagged`` is set when the margin is <= 0
        :rtype: SvmSolution

        :raises LqGameUsageError: On labels other than ±1
        :raises LqGameInstanceError: If a folded row lies outside B_p
    """
    pair = NormPair(q)
    folded = _folded(points, labels)
    instance = GameInstance(DenseStorage(folded), pair.p)
    n, d = instance.shape
    params = SolverParams.derive(n, pair, epsilon, seed)
    rng = RngStream(seed)
    radius = svm_radius(pair.q)
    gradient_scale = 2.0 + 2.0 * pair.q
    estimate_scale = max(1.0, radius ** pair.q + 2.0 * radius)
    threshold = params.clip_threshold
    state = SolverState.initial(n, d, pair.q, radius)
    logger.info("svm_solve n=%d d=%d R=%g %r", n, d, radius, params)

    w_sum = np.zeros(d)
    i_trace = np.empty(params.T, dtype=np.int64)
    j_trace = np.full(params.T, -1, dtype=np.int64)
    zero_v = np.zeros(n)
    start_queries = instance.queries
    started = time.perf_counter()

    for t in range(params.T):
        state.t = t + 1
        w = state.x
        w_sum += w

        i = categorical_sample(state.w, rng)
        i_trace[t] = i
        row = instance.query_row(i)
        gradient = (2.0 * row - pair.q * sgnpow(w, pair.q - 1.0)) / gradient_scale
        try:
            new_y = pnorm_ogd_step(state.y, gradient, params.iota * radius, pair.p)
        except LqGameZeroGradientError:
            new_y = state.y

        if np.any(w):
            j = lq_sample(w, pair.q, rng)
            j_trace[t] = j
            v = clip(svm_estimate(instance.query_column(j), w, j, pair.q) / estimate_scale, threshold)
        else:
            v = zero_v

        state.w = mwu_step(state.w, v, params.eta)
        state.set_primal(new_y)
        if (t + 1) % RESCALE_EVERY == 0:
            state.rescale()
        if (t + 1) % LOG_EVERY == 0:
            logger.debug("t=%d ‖w‖_q=%.6f", t + 1, lq_norm(state.x, pair.q))

    wall_time = time.perf_counter() - started
    queries = instance.queries - start_queries
    if queries > params.T * (n + d):
        raise LqGameInternalError(f"Run used {queries} queries, budget is {params.T * (n + d)}")

    w_bar = w_sum / params.T
    margin = svm_margin_value(points, labels, w_bar, pair.q)
    report = SolveReport(w_bar, i_trace, j_trace, margin, queries, wall_time, params,
                         path="svm", query_budget=params.T * (n + d))
    solution = SvmSolution(w_bar, margin, radius, report)
    if solution.flagged:
        logger.warning("Margin %.6g <= 0: data possibly unseparable or epsilon >= the optimal margin",
                       margin)
    return solution
