"""Hard instances for the query lower bound

    Two families of n x d games that differ in very few entries but whose
    ε-solutions (ε < 0.04) reveal which family the matrix came from and
    where the hidden column l sits. With a = 2^(-1/p), indices 0-based:

        Case 2: row 0 is (-a at column 0, a at column l), every other row
                is (a at column 0, a at column l). Value σ₂ = a.
        Case 1: as Case 2, except row k (k >= 2) is (1 at column 0,
                0 at column l). Value σ₁ = 1/(1 + (2^(1-1/q) + 1)^q)^(1/q).

    All other entries are zero and every row has ℓp norm exactly 1.
    Instances are generator-backed, so n and d can be large.

    Example::

        from lqgame.adversarial import HardInstanceSpec, build_hard_instance

        spec = HardInstanceSpec(case=2, n=4, d=4, l=2, p=2.0)
        instance = build_hard_instance(spec)
        instance.query_entry(0, 0)   # -0.7071...
"""

import logging
import math

import numpy as np

from lqgame.constants import CLASSIFY_MARGIN, SIMPLEX_TOL
from lqgame.estimator import RngStream
from lqgame.exceptions import LqGameUsageError
from lqgame.instance import GameInstance
from lqgame.norms import NormPair, as_vector, lq_norm
from lqgame.solver.classical import solve_lq_l1
from lqgame.storage.generator import GeneratorStorage

logger = logging.getLogger(__name__)

CASE_1 = 1
CASE_2 = 2


class HardInstanceSpec:
    """Parameters of a hard instance.

        :param case: 1 or 2
        :param n: Row count, >= 3
        :param d: Column count, >= 2
        :param l: Hidden column in 1..d-1
        :param k: Special row in 2..n-1 (Case 1 only)
        :param p: Row exponent, >= 2

        :raises LqGameUsageError: If any field is out of range
    """

    def __init__(self, case: int, n: int, d: int, l: int, k: int = None, p: float = 2.0) -> None:
        if case not in (CASE_1, CASE_2):
            raise LqGameUsageError(f"case must be 1 or 2, got {case}")
        if n < 3 or d < 2:
            raise LqGameUsageError(f"Hard instances need n >= 3 and d >= 2, got n={n}, d={d}")
        if not 1 <= l <= d - 1:
            raise LqGameUsageError(f"l must be in 1..{d - 1}, got {l}")
        if case == CASE_1:
            if k is None or not 2 <= k <= n - 1:
                raise LqGameUsageError(f"Case 1 needs k in 2..{n - 1}, got {k}")
        elif k is not None:
            raise LqGameUsageError("k is only meaningful for Case 1")
        if p < 2.0:
            raise LqGameUsageError(f"p must be >= 2, got {p}")
        self.case = int(case)
        self.n = int(n)
        self.d = int(d)
        self.l = int(l)
        self.k = None if k is None else int(k)
        self.p = float(p)

    @classmethod
    def random(cls, n: int, d: int, p: float, rng: RngStream) -> 'HardInstanceSpec':
        """Hidden (case, k, l) drawn uniformly."""
        generator = rng.generator
        case = int(generator.integers(1, 3))
        l = int(generator.integers(1, d))
        k = int(generator.integers(2, n)) if case == CASE_1 else None
        return cls(case, n, d, l, k, p)

    @property
    def value(self) -> float:
        """Closed-form game value for q conjugate to p."""
        if self.case == CASE_2:
            return sigma_case2(self.p)
        return sigma_case1(NormPair.from_p(self.p).q)

    def to_stanza(self) -> str:
        """Text form ``hard: case=.. n=.. d=.. l=.. [k=..] p=..``."""
        fields = [f"case={self.case}", f"n={self.n}", f"d={self.d}", f"l={self.l}"]
        if self.k is not None:
            fields.append(f"k={self.k}")
        fields.append(f"p={self.p!r}")
        return "hard: " + " ".join(fields)

    def to_dict(self) -> dict:
        return {
            'case': self.case,
            'n': self.n,
            'd': self.d,
            'l': self.l,
            'k': self.k,
            'p': self.p,
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, HardInstanceSpec):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return "HardInstanceSpec(case={}, n={}, d={}, l={}, k={}, p={!r})".format(
            self.case, self.n, self.d, self.l, self.k, self.p)


def build_hard_instance(spec: HardInstanceSpec) -> GameInstance:
    """Generator-backed instance for a spec; queries are counted as usual."""
    a = 2.0 ** (-1.0 / spec.p)
    special = spec.k if spec.case == CASE_1 else None

    def entry(i: int, j: int) -> float:
        if i == special:
            return 1.0 if j == 0 else 0.0
        if j == 0:
            return -a if i == 0 else a
        if j == spec.l:
            return a
        return 0.0

    def row(i: int) -> np.ndarray:
        values = np.zeros(spec.d)
        if i == special:
            values[0] = 1.0
        else:
            values[0] = -a if i == 0 else a
            values[spec.l] = a
        return values

    def column(j: int) -> np.ndarray:
        values = np.zeros(spec.n)
        if j == 0:
            values[:] = a
            values[0] = -a
        elif j == spec.l:
            values[:] = a
        if special is not None and j in (0, spec.l):
            values[special] = 1.0 if j == 0 else 0.0
        return values

    storage = GeneratorStorage(spec.n, spec.d, entry, row, column)
    return GameInstance(storage, spec.p)


def sigma_case1(q: float) -> float:
    """1 / (1 + (2^(1-1/q) + 1)^q)^(1/q), defined for q in [1, 2]."""
    return 1.0 / (1.0 + (2.0 ** (1.0 - 1.0 / q) + 1.0) ** q) ** (1.0 / q)


def sigma_case2(p: float) -> float:
    """2^(-1/p); 1 for p = inf."""
    if math.isinf(p):
        return 1.0
    return 2.0 ** (-1.0 / p)


def f1(q: float) -> float:
    """Case-1 separation margin (σ1 - 0.04)^q - 1 + (1 - 0.04·2^(1-1/q))^q.

        Positive means a Case-1 ε-solution cannot put a coordinate j >= 1
        over the threshold, because the mass left for x̄_0 would be below
        σ1 - ε. Decreasing on [1, 2], smallest (about 0.0075) at q = 2.
    """
    return ((sigma_case1(q) - CLASSIFY_MARGIN) ** q - 1.0
            + (1.0 - CLASSIFY_MARGIN * 2.0 ** (1.0 - 1.0 / q)) ** q)


def f2(q: float) -> float:
    """2(2^(1-1/q) + 1)^q (σ1 - 0.04)^q; above 1 on [1, 2] and increasing."""
    return 2.0 * (2.0 ** (1.0 - 1.0 / q) + 1.0) ** q * (sigma_case1(q) - CLASSIFY_MARGIN) ** q


def classification_threshold(p: float) -> float:
    """1 - 0.04·2^(1/p)."""
    return 1.0 - CLASSIFY_MARGIN * 2.0 ** (1.0 / p)


def classify_from_solution(x_bar, p: float, q: float) -> tuple:
    """Decide the case and hidden column from an ε-solution (ε < 0.04).

        If some coordinate j >= 1 reaches the threshold the matrix is
        Case 2 with l = j; otherwise it is Case 1 with l the argmax over
        j >= 1. Ties go to the smallest index.

        :param x_bar: Approximate solution in B_q
        :param p: Row exponent
        :param q: Primal exponent

        :returns: (case, l)
        :rtype: tuple

        :raises LqGameUsageError: If x_bar is outside B_q or too short
    """
    x_bar = as_vector(x_bar, "x_bar")
    if x_bar.size < 2:
        raise LqGameUsageError("x_bar needs at least two coordinates")
    if lq_norm(x_bar, q) > 1.0 + SIMPLEX_TOL:
        raise LqGameUsageError("x_bar lies outside the ℓq unit ball")
    tail = x_bar[1:]
    l = 1 + int(np.argmax(tail))
    case = CASE_2 if tail[l - 1] >= classification_threshold(p) else CASE_1
    return case, l


class LowerBoundTrial:
    """Outcome of one distinguishing experiment.

        :param spec: Hidden instance parameters
        :param predicted: (case, l) from :func:`classify_from_solution`
        :param report: Solver report the prediction came from
    """

    def __init__(self, spec: HardInstanceSpec, predicted: tuple, report) -> None:
        self.spec = spec
        self.predicted_case, self.predicted_l = predicted
        self.report = report

    @property
    def correct(self) -> bool:
        return self.predicted_case == self.spec.case and self.predicted_l == self.spec.l

    def to_dict(self) -> dict:
        return {
            'spec': self.spec.to_dict(),
            'predicted_case': self.predicted_case,
            'predicted_l': self.predicted_l,
            'correct': self.correct,
            'achieved_value': self.report.primal_value,
            'queries': self.report.queries,
        }

    def __repr__(self) -> str:
        return "LowerBoundTrial({!r}, predicted=({}, {}), correct={})".format(
            self.spec, self.predicted_case, self.predicted_l, self.correct)


def lower_bound_trial(spec: HardInstanceSpec, epsilon: float, seed: int = 0) -> LowerBoundTrial:
    """Solve the hidden instance and classify the result."""
    pair = NormPair.from_p(spec.p)
    report = solve_lq_l1(build_hard_instance(spec), pair.q, epsilon, seed)
    trial = LowerBoundTrial(spec, classify_from_solution(report.x_bar, pair.p, pair.q), report)
    logger.info("Lower-bound trial %r", trial)
    return trial
