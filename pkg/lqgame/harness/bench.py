"""Benchmark sweeps over (n, d) grids

    Every grid cell is a Case-2 hard instance (generator-backed, so large
    n and d cost no memory) whose value 2^(-1/p) is known in closed form.
    Runs fan out over a thread pool; each worker builds its own instance,
    so counters and RNG streams are never shared. Records come back in
    grid order whatever order the workers finish in.

    The classical sweep fits the log-log slope of queries per iteration
    against n + d (``slope``) and of total queries against n + d
    (``raw_slope``, which also carries the ln n growth of T). The quantum
    sweep fits the dual-preparation charge per iteration against n.

    Example::

        from lqgame.harness.bench import run_benchmark
        from lqgame.harness.config import RunConfig

        config = RunConfig("bench", grid="64,256", q=2.0, epsilon=0.5, max_iterations=50)
        result = run_benchmark(config)
        result.slope
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from lqgame.adversarial import CASE_2, HardInstanceSpec, build_hard_instance
from lqgame.exceptions import LqGameUsageError
from lqgame.norms import NormPair
from lqgame.quantum.ledger import DUAL_PREP
from lqgame.quantum.solver import quantum_solver_sim
from lqgame.solver.classical import solve_lq_l1

logger = logging.getLogger(__name__)

HARD_MIN_ROWS = 3


class BenchRecord:
    """One benchmark run.

        :param n: Rows
        :param d: Columns
        :param q: Primal exponent
        :param epsilon: Target error
        :param seed: Seed of this run
        :param queries: Entry reads charged by the solver
        :param iterations: Iterations actually run
        :param wall_ms: Solver wall time in milliseconds
        :param achieved_value: min_i A_i·x̄
        :param oracle_value: Known game value, when requested
        :param ledger: Quantum ledger dictionary (quantum sweep only)
    """

    def __init__(self, n: int, d: int, q: float, epsilon: float, seed: int, queries: int,
                 iterations: int, wall_ms: float, achieved_value: float,
                 oracle_value: float = None, ledger: dict = None) -> None:
        if queries < 0:
            raise LqGameUsageError(f"queries must be non-negative, got {queries}")
        self.n = int(n)
        self.d = int(d)
        self.q = float(q)
        self.epsilon = float(epsilon)
        self.seed = int(seed)
        self.queries = int(queries)
        self.iterations = int(iterations)
        self.wall_ms = float(wall_ms)
        self.achieved_value = float(achieved_value)
        self.oracle_value = None if oracle_value is None else float(oracle_value)
        self.ledger = ledger

    @property
    def success(self) -> bool:
        """achieved >= oracle - ε; None without an oracle value."""
        if self.oracle_value is None:
            return None
        return self.achieved_value >= self.oracle_value - self.epsilon

    @property
    def queries_per_iteration(self) -> float:
        return self.queries / self.iterations

    @property
    def dual_prep_per_iteration(self) -> float:
        if self.ledger is None:
            return None
        return self.ledger['breakdown'][DUAL_PREP] / self.iterations

    def to_dict(self) -> dict:
        data = {
            'n': self.n,
            'd': self.d,
            'q': self.q,
            'epsilon': self.epsilon,
            'seed': self.seed,
            'queries': self.queries,
            'iterations': self.iterations,
            'wall_ms': self.wall_ms,
            'achieved_value': self.achieved_value,
            'oracle_value': self.oracle_value,
            'success': self.success,
        }
        if self.ledger is not None:
            data['quantum_sim'] = self.ledger
        return data

    def __repr__(self) -> str:
        return "BenchRecord(n={}, d={}, seed={}, queries={}, achieved_value={!r})".format(
            self.n, self.d, self.seed, self.queries, self.achieved_value)


class BenchResult:
    """Records of a sweep plus the fitted slopes (None on a single-cell grid)."""

    def __init__(self, records: list, slope: float = None, raw_slope: float = None,
                 solver: str = "classical") -> None:
        self.records = list(records)
        self.slope = slope
        self.raw_slope = raw_slope
        self.solver = solver

    @property
    def success_rate(self) -> float:
        judged = [record.success for record in self.records if record.success is not None]
        if not judged:
            return None
        return sum(judged) / len(judged)

    def to_dict(self) -> dict:
        return {
            'solver': self.solver,
            'records': [record.to_dict() for record in self.records],
            'slope': self.slope,
            'raw_slope': self.raw_slope,
            'success_rate': self.success_rate,
        }

    def __repr__(self) -> str:
        return "BenchResult(solver={!r}, records={}, slope={!r})".format(
            self.solver, len(self.records), self.slope)


def parse_grid(grid: str) -> list:
    """Parse ``"256,1024x512"`` into [(256, 256), (1024, 512)].

        :raises LqGameUsageError: On an empty grid, bad cells or n < 3, d < 2
    """
    if grid is None or not grid.strip():
        raise LqGameUsageError("Benchmark grid is empty")
    cells = []
    for token in grid.split(","):
        token = token.strip().lower()
        n_text, _, d_text = token.partition("x")
        try:
            n = int(n_text)
            d = int(d_text) if d_text else n
        except ValueError:
            raise LqGameUsageError(f"Bad grid cell {token!r}, expected N or NxD") from None
        if n < HARD_MIN_ROWS or d < 2:
            raise LqGameUsageError(f"Grid cell {token!r} needs n >= 3 and d >= 2")
        cells.append((n, d))
    return cells


def loglog_slope(x, y) -> float:
    """Least-squares slope of log y against log x; None with fewer than two distinct x."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if np.unique(x).size < 2:
        return None
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def _cell_spec(n: int, d: int, q: float) -> HardInstanceSpec:
    return HardInstanceSpec(CASE_2, n, d, l=1, p=NormPair(q).p)


def _run_classical(task: tuple) -> BenchRecord:
    n, d, seed, config = task
    spec = _cell_spec(n, d, config.q)
    instance = build_hard_instance(spec)
    started = time.perf_counter()
    report = solve_lq_l1(instance, config.q, config.epsilon, seed, config.max_iterations)
    wall_ms = 1000.0 * (time.perf_counter() - started)
    oracle_value = spec.value if config.oracle else None
    return BenchRecord(n, d, config.q, config.epsilon, seed, report.queries, report.iterations,
                       wall_ms, report.primal_value, oracle_value)


def _run_quantum(task: tuple) -> BenchRecord:
    n, d, seed, config = task
    spec = _cell_spec(n, d, config.q)
    instance = build_hard_instance(spec)
    started = time.perf_counter()
    report, ledger = quantum_solver_sim(instance, config.q, config.epsilon, seed,
                                        config.failure_mode, config.max_iterations)
    wall_ms = 1000.0 * (time.perf_counter() - started)
    oracle_value = spec.value if config.oracle else None
    return BenchRecord(n, d, config.q, config.epsilon, seed, report.queries, report.iterations,
                       wall_ms, report.primal_value, oracle_value, ledger.to_dict())


def run_benchmark(config) -> BenchResult:
    """Run every (cell, repeat) of the grid and fit the scaling slope.

        :param config: :class:`~lqgame.harness.config.RunConfig` with ``grid``

        :returns: Records in grid order and the fitted slopes
        :rtype: BenchResult

        :raises LqGameUsageError: On an empty or malformed grid
    """
    cells = parse_grid(config.grid)
    tasks = [(n, d, config.seed + repeat, config)
             for n, d in cells for repeat in range(config.repeats)]
    runner = _run_quantum if config.bench_solver == "qsim" else _run_classical
    workers = max(1, min(config.threads, len(tasks)))
    logger.info("Benchmark %s: %d cells x %d repeats on %d workers",
                config.bench_solver, len(cells), config.repeats, workers)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(runner, tasks))

    if config.bench_solver == "qsim":
        slope = loglog_slope([r.n for r in records], [r.dual_prep_per_iteration for r in records])
        raw_slope = loglog_slope([r.n for r in records], [r.ledger['oracle_calls'] for r in records])
    else:
        sizes = [r.n + r.d for r in records]
        slope = loglog_slope(sizes, [r.queries_per_iteration for r in records])
        raw_slope = loglog_slope(sizes, [r.queries for r in records])
    if slope is not None and not math.isfinite(slope):
        slope = None
    result = BenchResult(records, slope, raw_slope, config.bench_solver)
    logger.info("Benchmark done: %r", result)
    return result
