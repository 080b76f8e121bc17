"""Run configuration assembled from the command line and the environment"""

import os

from lqgame.constants import CONSTANT_LOG_BASES, L1_CONSTANT, ORACLE_DEFAULT_TOL
from lqgame.exceptions import LqGameUsageError
from lqgame.quantum.ledger import FAILURE_MODES

MODES = ("solve", "solve-l1", "caratheodory", "svm", "qsim", "hardgen", "bench", "oracle")
BENCH_SOLVERS = ("classical", "qsim")

THREADS_ENV = "LQG_THREADS"
LOG_LEVEL_ENV = "LQG_LOG_LEVEL"


def threads_from_env(default: int = None) -> int:
    """Worker cap from ``LQG_THREADS``, else ``default``, else the CPU count.

        :raises LqGameUsageError: If the variable is not a positive integer
    """
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return default if default is not None else (os.cpu_count() or 1)
    try:
        threads = int(raw)
    except ValueError:
        raise LqGameUsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads < 1:
        raise LqGameUsageError(f"{THREADS_ENV} must be >= 1, got {threads}")
    return threads


class RunConfig:
    """Everything one CLI invocation needs.

        Only the fields relevant to ``mode`` are consulted; the others keep
        their defaults and are still reported, so two reports made from the
        same configuration can be compared field by field.

        :param mode: One of ``MODES``
        :param instance_path: Instance file (solve, solve-l1, qsim, oracle)
        :param q: Primal exponent
        :param epsilon: Additive error in (0, 1)
        :param seed: Base RNG seed; repeat r uses seed + r
        :param repeats: Runs per configuration, >= 1
        :param output_path: Report (or, for hardgen, instance) destination
        :param log_base: Dispatcher threshold logarithm, ``"e"`` or ``"2"``
        :param l1_constant: c in T' = ceil(c·ln(n+d)/ε²)
        :param oracle_tol: Certificate gap for the reference oracle
        :param threads: Benchmark worker cap
        :param oracle: Certify runs against the reference oracle (solve, bench)
        :param use_dispatch: Let the Carathéodory game take the ℓ1-ℓ1 route
        :param oracle_seed: Starting-point seed of the oracle (oracle mode)

        :raises LqGameUsageError: If a field is out of range
    """

    def __init__(self, mode: str, instance_path=None, q: float = 2.0, epsilon: float = 0.1,
                 seed: int = 0, repeats: int = 1, output_path=None, log_base: str = "e",
                 l1_constant: float = L1_CONSTANT, oracle_tol: float = ORACLE_DEFAULT_TOL,
                 threads: int = None, oracle: bool = False, p: float = None,
                 vertices_path=None, target_path=None, points_path=None, labels_path=None,
                 grid: str = None, bench_solver: str = "classical", max_iterations: int = None,
                 failure_mode: str = "uniform", hard: dict = None,
                 include_traces: bool = False, use_dispatch: bool = False,
                 oracle_seed: int = None) -> None:
        if mode not in MODES:
            raise LqGameUsageError(f"mode must be one of {MODES}, got {mode!r}")
        if not 0.0 < epsilon < 1.0:
            raise LqGameUsageError(f"epsilon must be in (0, 1), got {epsilon}")
        if repeats < 1:
            raise LqGameUsageError(f"repeats must be >= 1, got {repeats}")
        if seed < 0:
            raise LqGameUsageError(f"seed must be non-negative, got {seed}")
        if log_base not in CONSTANT_LOG_BASES:
            raise LqGameUsageError(f"log_base must be one of {CONSTANT_LOG_BASES}, got {log_base!r}")
        if l1_constant <= 0:
            raise LqGameUsageError(f"l1_constant must be positive, got {l1_constant}")
        if oracle_tol <= 0:
            raise LqGameUsageError(f"oracle_tol must be positive, got {oracle_tol}")
        if bench_solver not in BENCH_SOLVERS:
            raise LqGameUsageError(f"bench solver must be one of {BENCH_SOLVERS}, got {bench_solver!r}")
        if failure_mode not in FAILURE_MODES:
            raise LqGameUsageError(f"failure_mode must be one of {FAILURE_MODES}, got {failure_mode!r}")
        if max_iterations is not None and max_iterations < 1:
            raise LqGameUsageError(f"max_iterations must be >= 1, got {max_iterations}")
        if threads is not None and threads < 1:
            raise LqGameUsageError(f"threads must be >= 1, got {threads}")

        self.mode = mode
        self.instance_path = instance_path
        self.q = float(q)
        self.epsilon = float(epsilon)
        self.seed = int(seed)
        self.repeats = int(repeats)
        self.output_path = output_path
        self.log_base = log_base
        self.l1_constant = float(l1_constant)
        self.oracle_tol = float(oracle_tol)
        self.threads = threads if threads is not None else threads_from_env()
        self.oracle = bool(oracle)
        self.p = None if p is None else float(p)
        self.vertices_path = vertices_path
        self.target_path = target_path
        self.points_path = points_path
        self.labels_path = labels_path
        self.grid = grid
        self.bench_solver = bench_solver
        self.max_iterations = max_iterations
        self.failure_mode = failure_mode
        self.hard = dict(hard) if hard else {}
        self.include_traces = bool(include_traces)
        self.use_dispatch = bool(use_dispatch)
        self.oracle_seed = oracle_seed

    @classmethod
    def from_args(cls, args) -> 'RunConfig':
        """Build from an :mod:`argparse` namespace; absent options keep defaults."""
        def get(name, default=None):
            value = getattr(args, name, None)
            return default if value is None else value

        hard = {key: getattr(args, key) for key in ("case", "n", "d", "l", "k")
                if getattr(args, key, None) is not None}
        return cls(
            mode=args.command,
            instance_path=get("instance"),
            q=get("q", 2.0),
            epsilon=get("eps", 0.1),
            seed=get("seed", 0),
            repeats=get("repeats", 1),
            output_path=get("out"),
            log_base=get("log_base", "e"),
            l1_constant=get("l1_constant", L1_CONSTANT),
            oracle_tol=get("tol", ORACLE_DEFAULT_TOL),
            threads=get("threads"),
            oracle=get("oracle", False),
            p=get("p"),
            vertices_path=get("vertices"),
            target_path=get("target"),
            points_path=get("points"),
            labels_path=get("labels"),
            grid=get("grid"),
            bench_solver=get("solver", "classical"),
            max_iterations=get("max_iterations"),
            failure_mode=get("failure_mode", "uniform"),
            hard=hard,
            include_traces=get("traces", False),
            use_dispatch=get("dispatch", False),
            oracle_seed=getattr(args, "seed", None) if args.command == "oracle" else None,
        )

    def to_dict(self) -> dict:
        """Parameters echoed into the report (paths as strings, threads omitted)."""
        data = {
            'mode': self.mode,
            'q': self.q,
            'epsilon': self.epsilon,
            'seed': self.seed,
            'repeats': self.repeats,
            'log_base': self.log_base,
            'l1_constant': self.l1_constant,
            'oracle_tol': self.oracle_tol,
        }
        optional = {
            'instance': self.instance_path,
            'p': self.p,
            'vertices': self.vertices_path,
            'target': self.target_path,
            'points': self.points_path,
            'labels': self.labels_path,
            'grid': self.grid,
            'max_iterations': self.max_iterations,
        }
        for key, value in optional.items():
            if value is not None:
                data[key] = str(value) if key in ('instance', 'vertices', 'target', 'points', 'labels') else value
        if self.mode == "bench":
            data['solver'] = self.bench_solver
        if self.mode == "qsim" or self.bench_solver == "qsim":
            data['failure_mode'] = self.failure_mode
        if self.hard:
            data['hard'] = dict(self.hard)
        return data

    def __repr__(self) -> str:
        return "RunConfig(mode={!r}, q={!r}, epsilon={!r}, seed={}, repeats={})".format(
            self.mode, self.q, self.epsilon, self.seed, self.repeats)

    def __str__(self) -> str:
        return "{} q={:g} eps={:g} seed={} repeats={}".format(
            self.mode, self.q, self.epsilon, self.seed, self.repeats)
