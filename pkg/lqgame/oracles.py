"""Dense reference oracles for ℓq-ℓ1 games

    Slow, accurate ground truth for tests and the ``oracle`` CLI mode. The
    game value is σ = max over B_q of min_i A_i·x = min over the simplex of
    ‖Aᵀp‖_p. Both sides are tracked and a :class:`ValueCertificate` carries
    a feasible lower bound and a feasible upper bound.

    Example::

        from lqgame.instance import normalize_rows
        from lqgame.oracles import game_value_exact

        instance = normalize_rows([[1.0, 0.0], [0.0, 1.0]], p=2.0)
        certificate = game_value_exact(instance, q=2.0, tol=1e-6)
        certificate.lower, certificate.upper   # both ~ 1/sqrt(2)
"""

import logging
import math

import numpy as np

from lqgame.constants import (
    ORACLE_CHECK_EVERY,
    ORACLE_DEFAULT_TOL,
    ORACLE_MAX_ITER,
    SIMPLEX_TOL,
)
from lqgame.estimator import RngStream
from lqgame.exceptions import LqGameConvergenceError, LqGameUsageError
from lqgame.norms import NormPair, as_vector, lq_norm, sgnpow

logger = logging.getLogger(__name__)


class ValueCertificate:
    """Bracket lower <= σ <= upper from a feasible primal/dual pair.

        :param lower: min_i A_i·x for a feasible x
        :param upper: ‖Aᵀp‖_p for a feasible simplex point p
        :param iterations_used: Mirror-descent iterations spent
        :param x: The primal point behind ``lower``
        :param p_dist: The simplex point behind ``upper``
    """

    def __init__(self, lower: float, upper: float, iterations_used: int = 0,
                 x=None, p_dist=None) -> None:
        self.lower = float(lower)
        self.upper = float(upper)
        self.iterations_used = int(iterations_used)
        self.x = x
        self.p_dist = p_dist

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    @property
    def value(self) -> float:
        """Midpoint of the bracket."""
        return 0.5 * (self.lower + self.upper)

    def to_dict(self) -> dict:
        return {
            'lower': self.lower,
            'upper': self.upper,
            'gap': self.gap,
            'iterations_used': self.iterations_used,
        }

    def __str__(self) -> str:
        return "[{:.9f}, {:.9f}] gap={:.3e} after {} iterations".format(
            self.lower, self.upper, self.gap, self.iterations_used)

    def __repr__(self) -> str:
        return "ValueCertificate(lower={!r}, upper={!r}, iterations_used={})".format(
            self.lower, self.upper, self.iterations_used)


def best_response_x(y, q: float) -> np.ndarray:
    """Maximiser of yᵀx over B_q: x = sgn(y)|y|^(p-1) / ‖y‖_p^(p-1).

        The result has ‖x‖_q = 1 and yᵀx = ‖y‖_p. The zero vector maps
        to the zero vector.

        :param y: Payoff vector, typically Aᵀp
        :param q: Primal exponent in (1, 2]

        :returns: Best response in B_q
        :rtype: numpy.ndarray
    """
    y = as_vector(y, "y")
    p = NormPair(q).p
    norm = lq_norm(y, p)
    if norm == 0.0:
        return np.zeros_like(y)
    return sgnpow(y / norm, p - 1.0)


def primal_value(instance, x) -> float:
    """min_i A_i·x by a dense scan, charging n·d queries.

        :param instance: Game instance
        :param x: Primal point of length d

        :returns: Worst-row payoff
        :rtype: float
    """
    x = as_vector(x, "x")
    if x.size != instance.d:
        raise LqGameUsageError(f"x has length {x.size}, instance has d={instance.d}")
    matrix = instance.dense()
    return float(np.min(matrix @ x))


def _check_simplex(p_dist: np.ndarray) -> None:
    if np.any(p_dist < -SIMPLEX_TOL) or abs(float(p_dist.sum()) - 1.0) > SIMPLEX_TOL:
        raise LqGameUsageError("p_dist is not a point of the simplex")


def duality_gap(instance, x, p_dist, q: float) -> float:
    """‖Aᵀp_dist‖_p - min_i A_i·x, non-negative for feasible inputs.

        :raises LqGameUsageError: If ‖x‖_q > 1 + 1e-9 or p_dist is off the simplex
    """
    pair = NormPair(q)
    x = as_vector(x, "x")
    p_dist = as_vector(p_dist, "p_dist")
    if lq_norm(x, pair.q) > 1.0 + SIMPLEX_TOL:
        raise LqGameUsageError("x lies outside the ℓq unit ball")
    _check_simplex(p_dist)
    if x.size != instance.d or p_dist.size != instance.n:
        raise LqGameUsageError(
            f"Shapes x={x.size}, p_dist={p_dist.size} do not match instance {instance.shape}")
    matrix = instance.dense()
    return lq_norm(matrix.T @ p_dist, pair.p) - float(np.min(matrix @ x))


def game_value_exact(instance, q: float, tol: float = ORACLE_DEFAULT_TOL,
                     seed: int = None, max_iter: int = ORACLE_MAX_ITER) -> ValueCertificate:
    """Bracket the game value to within tol.

        Entropic mirror descent on p -> ‖Aᵀp‖_p over the simplex with step
        1/sqrt(t). The subgradient at p is A·best_response_x(Aᵀp). Every
        ``ORACLE_CHECK_EVERY`` iterations the last iterate, the running
        average and the averaged best responses are scored; the best
        feasible lower and upper bounds seen so far form the certificate.

        :param instance: Game instance (read densely, n·d queries)
        :param q: Primal exponent in (1, 2]
        :param tol: Target gap, > 0
        :param seed: Perturbs the starting point; None starts at uniform
        :param max_iter: Iteration cap

        :returns: Certificate with gap <= tol
        :rtype: ValueCertificate

        :raises LqGameConvergenceError: If the cap is hit first; the best
            certificate is attached
    """
    if not tol > 0:
        raise LqGameUsageError(f"tol must be positive, got {tol}")
    pair = NormPair(q)
    matrix = instance.dense()
    n = matrix.shape[0]

    def upper_at(p_dist):
        return lq_norm(matrix.T @ p_dist, pair.p)

    def lower_at(x):
        return float(np.min(matrix @ x))

    log_p = np.zeros(n)
    if seed is not None:
        log_p = RngStream(seed).generator.normal(0.0, 1.0, n)
    p_sum = np.zeros(n)
    x_sum = np.zeros(matrix.shape[1])

    best = ValueCertificate(-math.inf, math.inf)
    for t in range(1, max_iter + 1):
        p_dist = np.exp(log_p - log_p.max())
        p_dist /= p_dist.sum()
        x = best_response_x(matrix.T @ p_dist, pair.q)
        p_sum += p_dist
        x_sum += x

        if t % ORACLE_CHECK_EVERY == 0 or t == 1 or t == max_iter:
            p_avg = p_sum / t
            x_avg = x_sum / t
            for candidate in (p_dist, p_avg):
                value = upper_at(candidate)
                if value < best.upper:
                    best.upper, best.p_dist = value, candidate.copy()
            for candidate in (x, x_avg, best_response_x(matrix.T @ p_avg, pair.q)):
                value = lower_at(candidate)
                if value > best.lower:
                    best.lower, best.x = value, candidate.copy()
            best.iterations_used = t
            if best.gap <= tol:
                logger.debug("Oracle converged: %s", best)
                return best

        # A·x is a subgradient of ‖Aᵀp‖_p at p
        log_p -= (matrix @ x) / math.sqrt(t)

    logger.warning("Oracle hit the iteration cap: %s", best)
    raise LqGameConvergenceError(
        f"Gap {best.gap:.3e} above tol {tol:g} after {max_iter} iterations", certificate=best)
