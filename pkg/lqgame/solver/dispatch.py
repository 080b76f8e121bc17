"""Choose between the ℓq-ℓ1 and ℓ1-ℓ1 solvers

    When p is larger than log(d)/eps the ℓq ball is within O(eps) of the
    ℓ1 ball for this game, and the ℓ1-ℓ1 solver is cheaper. Its output
    lies in B_1, which is inside B_q, so no rescaling is needed; the
    accepted error is reported as 2·eps.
"""

import logging
import math

from lqgame.constants import CONSTANT_LOG_BASES, DISPATCH_ERROR_FACTOR, L1_CONSTANT
from lqgame.exceptions import LqGameUsageError
from lqgame.norms import NormPair
from lqgame.solver.classical import solve_lq_l1
from lqgame.solver.l1 import run_l1_l1

logger = logging.getLogger(__name__)

PATH_LQ = "lq-l1"
PATH_L1 = "l1-l1"


def dispatch_threshold(d: int, epsilon: float, log_base: str = "e") -> float:
    """log(d)/epsilon in the chosen base ("e" or "2")."""
    if log_base not in CONSTANT_LOG_BASES:
        raise LqGameUsageError(f"log_base must be one of {CONSTANT_LOG_BASES}, got {log_base!r}")
    if not 0.0 < epsilon < 1.0:
        raise LqGameUsageError(f"epsilon must be in (0, 1), got {epsilon}")
    log_d = math.log(d) if log_base == "e" else math.log2(d)
    return log_d / epsilon


def choose_path(p: float, d: int, epsilon: float, log_base: str = "e") -> str:
    """Return ``"l1-l1"`` if p > log(d)/epsilon, else ``"lq-l1"``."""
    return PATH_L1 if p > dispatch_threshold(d, epsilon, log_base) else PATH_LQ


def solve_dispatch(instance, q: float, epsilon: float, seed: int = 0,
                   log_base: str = "e", l1_constant: float = L1_CONSTANT):
    """Run whichever solver fits (q, d, epsilon); the report records the path.

        :param instance: Game instance
        :param q: Primal exponent in (1, 2]
        :param epsilon: Additive error in (0, 1)
        :param seed: RNG seed
        :param log_base: Logarithm base of the threshold
        :param l1_constant: Constant c of the ℓ1-ℓ1 iteration count

        :returns: Report of the run
        :rtype: SolveReport
    """
    pair = NormPair(q)
    path = choose_path(pair.p, instance.d, epsilon, log_base)
    logger.info("Dispatching to %s (p=%g, threshold=%g)", path, pair.p,
                dispatch_threshold(instance.d, epsilon, log_base))
    if path == PATH_L1:
        report = run_l1_l1(instance, epsilon, seed, l1_constant, pair=pair)
        report.accepted_error = DISPATCH_ERROR_FACTOR * epsilon
        return report
    return solve_lq_l1(instance, q, epsilon, seed)
