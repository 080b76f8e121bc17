"""Classical simulation of the quantum sublinear ℓq-ℓ1 solver

    The loop mirrors :func:`lqgame.solver.classical.solve_lq_l1` with three
    quantum subroutines replaced by cost and error models:

    - i_t is measured from |p_t>, prepared from sqrt(w_t) by ℓ2 state
      preparation through the weight oracle O_t (charged to ``dual_prep``)
    - ‖A_{i_t}‖_p^p and ‖y_t‖_q^q come from median-boosted noisy norm
      estimates with relative error δ = η² (``norm_estimation``)
    - j_t is measured from the ℓq state of y_t (``state_prep`` and
      ``min_finding``)

    Sampling itself uses the exact laws; only the charges and the norm
    estimates are simulated. The y-update divides by the estimated row norm
    and the dual estimate uses the estimated ‖y_t‖_q, so the run is exposed
    to the estimation noise exactly as the quantum algorithm would be.

    Example::

        from lqgame.adversarial import HardInstanceSpec, build_hard_instance
        from lqgame.quantum import quantum_solver_sim

        instance = build_hard_instance(HardInstanceSpec(2, n=4, d=4, l=1))
        report, ledger = quantum_solver_sim(instance, q=2.0, epsilon=0.9, seed=3)
        report.succinct.coordinate(instance, 1)
        ledger.to_dict()
"""

import logging
import math
import time

import numpy as np

from lqgame.constants import (
    COORDINATE_MONITOR_C,
    LOG_EVERY,
    QSIM_LOG_COEFF,
    RESCALE_EVERY,
)
from lqgame.estimator import RngStream, categorical_sample, clip, lq_sample
from lqgame.exceptions import LqGameInternalError, LqGameUsageError
from lqgame.norms import NormPair, lq_norm, sgnpow
from lqgame.oracles import primal_value
from lqgame.quantum.amplitude import PreparationPlan, max_finding_charge
from lqgame.quantum.ledger import (
    FAILURE_MODES,
    MIN_FINDING,
    NORM_ESTIMATION,
    STATE_PREP,
    QueryLedger,
    simulate_norm_estimate,
)
from lqgame.solver.classical import check_instance, mwu_step
from lqgame.solver.params import SolverParams, SolverState
from lqgame.solver.report import SolveReport

logger = logging.getLogger(__name__)

PERTURBATION_SLACK = 1e-12


def _row_increment(row: np.ndarray, row_estimate: float, iota: float, p: float) -> np.ndarray:
    # iota·sgn(A)|A|^(p-1) / est‖A‖_p^(p-2), with est‖A‖_p^p given
    return iota * sgnpow(row, p - 1.0) / row_estimate ** ((p - 2.0) / p)


def _scale(norm_estimate: float, q: float) -> float:
    return max(1.0, norm_estimate ** (1.0 / q))


class SuccinctSolution:
    """x̄ kept as the sampled rows and the estimated norms.

        y_{t+1} = y_t + ι·sgn(A_{i_t})|A_{i_t}|^(p-1) / est‖A_{i_t}‖_p^(p-2), so any
        coordinate of x̄ = (1/T) Σ y_t / max(1, est‖y_t‖_q) follows from
        column j of the sampled rows alone.

        :param i_trace: Sampled rows i_1..i_T
        :param row_estimates: Estimated ‖A_{i_t}‖_p^p per iteration (0 skips the update)
        :param norm_estimates: Estimated ‖y_t‖_q^q per iteration
        :param iota: OGD step
        :param q: Primal exponent
    """

    def __init__(self, i_trace, row_estimates, norm_estimates, iota: float, q: float) -> None:
        self.i_trace = np.asarray(i_trace, dtype=np.int64)
        self.row_estimates = np.asarray(row_estimates, dtype=np.float64)
        self.norm_estimates = np.asarray(norm_estimates, dtype=np.float64)
        if not self.i_trace.size == self.row_estimates.size == self.norm_estimates.size:
            raise LqGameUsageError("Traces of a succinct solution must have equal length")
        self.iota = float(iota)
        self.pair = NormPair(q)

    @property
    def T(self) -> int:
        return int(self.i_trace.size)

    @property
    def q(self) -> float:
        return self.pair.q

    @property
    def p(self) -> float:
        return self.pair.p

    def _increments(self, entries: np.ndarray) -> np.ndarray:
        increments = np.zeros(self.T)
        active = self.row_estimates > 0
        increments[active] = _row_increment(entries[active], self.row_estimates[active],
                                            self.iota, self.p)
        return increments

    def coordinate(self, instance, j: int) -> float:
        """Reconstruct x̄_j, reading entry j of every distinct sampled row.

            :param instance: The instance the run was made on
            :param j: Column index

            :returns: x̄_j
            :rtype: float
        """
        rows, inverse = np.unique(self.i_trace, return_inverse=True)
        values = np.array([instance.query_entry(int(i), j) for i in rows])
        entries = values[inverse]
        # y_1 = 0; y_{t+1} = y_t + increment_t
        y = np.concatenate(([0.0], np.cumsum(self._increments(entries))[:-1]))
        scales = np.array([_scale(value, self.q) for value in self.norm_estimates])
        return float(np.sum(y / scales) / self.T)

    def dense(self, instance) -> np.ndarray:
        """All coordinates of x̄ (d column reconstructions)."""
        return np.array([self.coordinate(instance, j) for j in range(instance.d)])

    def to_dict(self) -> dict:
        return {
            'T': self.T,
            'q': self.q,
            'p': self.p,
            'iota': self.iota,
            'i_trace': self.i_trace.tolist(),
            'row_estimates': self.row_estimates.tolist(),
            'norm_estimates': self.norm_estimates.tolist(),
        }

    def __repr__(self) -> str:
        return "SuccinctSolution(T={}, q={!r}, iota={!r})".format(self.T, self.q, self.iota)


def median_boost(T: int) -> int:
    """2·ceil(ln T) repetitions, at least one."""
    return max(1, 2 * int(math.ceil(math.log(T))))


def coordinate_bound(p: float, epsilon: float, T: int) -> float:
    """C·sqrt(p)/ε·ln T, the monitored ceiling on |y_t(j)|."""
    return COORDINATE_MONITOR_C * math.sqrt(p) / epsilon * max(1.0, math.log(T))


def quantum_solver_sim(instance, q: float, epsilon: float, seed: int = 0,
                       failure_mode: str = "uniform", max_iterations: int = None) -> tuple:
    """Run the quantum ℓq-ℓ1 solver with simulated subroutines.

        :param instance: Game instance with rows in the ℓp unit ball
        :param q: Primal exponent in (1, 2]
        :param epsilon: Additive error in (0, 1)
        :param seed: RNG seed
        :param failure_mode: Value reported by failed norm estimates, one of
            ``"uniform"``, ``"zero"``, ``"double"``
        :param max_iterations: Stop after this many iterations (ledger sweeps only)

        :returns: (report, ledger); ``report.succinct`` holds the succinct x̄
        :rtype: tuple

        :raises LqGameUsageError: On an empty instance or bad parameters
        :raises LqGameInternalError: If a dual estimate leaves the δ/η
            perturbation bound on an accurate norm estimate
    """
    pair = NormPair(q)
    check_instance(instance, pair)
    if failure_mode not in FAILURE_MODES:
        raise LqGameUsageError(f"failure_mode must be one of {FAILURE_MODES}, got {failure_mode!r}")
    n, d = instance.n, instance.d
    params = SolverParams.derive(n, pair, epsilon, seed, log_coeff=QSIM_LOG_COEFF)
    iterations = params.T if max_iterations is None else max(1, min(params.T, int(max_iterations)))
    eta = params.eta
    delta = eta ** 2 if eta > 0 else epsilon ** 2
    boost = median_boost(params.T)
    threshold = params.clip_threshold
    perturbation_bound = delta / eta * (1.0 + 1e-9) + PERTURBATION_SLACK if eta > 0 else math.inf
    monitor = coordinate_bound(pair.p, epsilon, params.T)

    rng = RngStream(seed)
    noise = rng.spawn(1)
    ledger = QueryLedger()
    state = SolverState.initial(n, d, pair.q)
    y = state.y
    logger.info("quantum_solver_sim n=%d d=%d δ=%.3g boost=%d %r", n, d, delta, boost, params)

    x_sum = np.zeros(d)
    i_trace = np.empty(iterations, dtype=np.int64)
    j_trace = np.full(iterations, -1, dtype=np.int64)
    row_estimates = np.zeros(iterations)
    norm_estimates = np.zeros(iterations)
    zero_v = np.zeros(n)
    diagnostics = {
        'delta': delta,
        'boost': boost,
        'coordinate_bound': monitor,
        'coordinate_flagged': False,
        'max_coordinate': 0.0,
        'perturbation_checks': 0,
        'max_perturbation': 0.0,
        'row_estimate_failures': 0,
        'norm_estimate_failures': 0,
    }
    if iterations < params.T:
        diagnostics['truncated'] = True
    start_queries = instance.queries
    started = time.perf_counter()

    for t in range(iterations):
        i = categorical_sample(state.w, rng)
        i_trace[t] = i

        row = instance.query_row(i)
        row_estimate, charge = simulate_norm_estimate(
            float(np.sum(np.abs(row) ** pair.p)), delta, boost, d, noise, failure_mode)
        ledger.charge(NORM_ESTIMATION, charge)
        row_estimates[t] = row_estimate.value
        if not row_estimate.within_bound:
            diagnostics['row_estimate_failures'] += 1

        mass = float(np.sum(np.abs(y) ** pair.q))
        norm_estimate, charge = simulate_norm_estimate(mass, delta, boost, d, noise, failure_mode)
        ledger.charge(NORM_ESTIMATION, charge)
        norm_estimates[t] = norm_estimate.value
        if not norm_estimate.within_bound:
            diagnostics['norm_estimate_failures'] += 1
        scale_estimate = _scale(norm_estimate.value, pair.q)
        x_sum += y / scale_estimate

        if mass > 0.0:
            plan = PreparationPlan(y, pair.q)
            charge = plan.run(rng)
            ledger.charge(MIN_FINDING, max_finding_charge(d))
            ledger.charge(STATE_PREP, charge - max_finding_charge(d))
            j = lq_sample(y, pair.q, rng)
            j_trace[t] = j
            column = instance.query_column(j)
            pivot = float(sgnpow(y[j], pair.q - 1.0))
            v = clip(column * norm_estimate.value / (pivot * scale_estimate), threshold)
            if norm_estimate.within_bound:
                exact = clip(column * mass / (pivot * _scale(mass, pair.q)), threshold)
                gap = float(np.max(np.abs(v - exact)))
                diagnostics['perturbation_checks'] += 1
                diagnostics['max_perturbation'] = max(diagnostics['max_perturbation'], gap)
                if gap > perturbation_bound:
                    raise LqGameInternalError(
                        f"Dual estimate moved by {gap!r}, bound δ/η is {delta / eta!r} at t={t + 1}")
        else:
            v = zero_v

        if row_estimate.value > 0.0:
            y = y + _row_increment(row, row_estimate.value, params.iota, pair.p)
            largest = float(np.max(np.abs(y)))
            diagnostics['max_coordinate'] = max(diagnostics['max_coordinate'], largest)
            if largest > monitor and not diagnostics['coordinate_flagged']:
                diagnostics['coordinate_flagged'] = True
                logger.warning("|y_t(j)| = %.6g exceeds the monitored bound %.6g at t=%d",
                               largest, monitor, t + 1)

        state.w = mwu_step(state.w, v, eta)
        if (t + 1) % RESCALE_EVERY == 0:
            state.rescale()
        # |p_{t+1}> from O_t: amplitudes sqrt(w) measure as w / Σw
        ledger.charge_dual(PreparationPlan(np.sqrt(state.w), 2.0).run(rng), t + 1)

        if (t + 1) % LOG_EVERY == 0:
            logger.debug("t=%d ‖y‖_q=%.6f oracle_calls=%d", t + 1, lq_norm(y, pair.q),
                         ledger.oracle_calls)

    wall_time = time.perf_counter() - started
    queries = instance.queries - start_queries
    budget = iterations * (n + d)
    if queries > budget:
        raise LqGameInternalError(f"Run used {queries} queries, budget is {budget}")

    x_bar = x_sum / iterations
    succinct = SuccinctSolution(i_trace, row_estimates, norm_estimates, params.iota, pair.q)
    evaluation = instance.fork()
    value = primal_value(evaluation, x_bar)
    report = SolveReport(x_bar, i_trace, j_trace, value, queries, wall_time, params,
                         path="qsim", evaluation_queries=evaluation.queries,
                         query_budget=budget, succinct=succinct, diagnostics=diagnostics)
    logger.info("quantum_solver_sim done: %s %r", report, ledger)
    return report, ledger
