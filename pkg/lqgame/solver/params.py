"""Derived constants and evolving state of the primal-dual loop"""

import math

import numpy as np

from lqgame.constants import SOLVER_LOG_COEFF, ETA_NUMERATOR, ETA_DENOMINATOR
from lqgame.exceptions import LqGameUsageError
from lqgame.norms import NormPair, project_lq_ball


class SolverParams:
    """Iteration count and step sizes of the sublinear solver.

        T = ceil((log_coeff * ln n + 4p) / eps^2), eta = sqrt(11 ln n / (12 T)),
        iota = sqrt((q - 1) / (2 T)). Logarithms are natural. For n = 1 the
        dual player has nothing to learn: eta = 0 and clipping is disabled.

        :param pair: Norm pair (q, p); None for the ℓ1-ℓ1 path
        :param epsilon: Target additive error in (0, 1)
        :param T: Iteration count
        :param eta: MWU step
        :param iota: OGD step
        :param seed: RNG seed
    """

    def __init__(self, pair: NormPair, epsilon: float, T: int, eta: float,
                 iota: float, seed: int = 0) -> None:
        if T < 1:
            raise LqGameUsageError(f"Iteration count must be positive, got {T}")
        self.pair = pair
        self.epsilon = float(epsilon)
        self.T = int(T)
        self.eta = float(eta)
        self.iota = float(iota)
        self.seed = int(seed)

    @classmethod
    def derive(cls, n: int, pair: NormPair, epsilon: float, seed: int = 0,
               log_coeff: float = SOLVER_LOG_COEFF) -> 'SolverParams':
        """Derive T, eta and iota from the instance size and target error.

            :raises LqGameUsageError: If n < 1 or epsilon is not in (0, 1)
        """
        if n < 1:
            raise LqGameUsageError(f"Row count must be positive, got {n}")
        if not 0.0 < epsilon < 1.0:
            raise LqGameUsageError(f"epsilon must be in (0, 1), got {epsilon}")
        log_n = math.log(n)
        T = math.ceil((log_coeff * log_n + 4.0 * pair.p) / epsilon ** 2)
        eta = math.sqrt(ETA_NUMERATOR * log_n / (ETA_DENOMINATOR * T))
        iota = math.sqrt((pair.q - 1.0) / (2.0 * T))
        return cls(pair, epsilon, T, eta, iota, seed)

    @property
    def q(self) -> float:
        return self.pair.q if self.pair is not None else None

    @property
    def p(self) -> float:
        return self.pair.p if self.pair is not None else None

    @property
    def clip_threshold(self) -> float:
        """1/eta, or inf when eta = 0."""
        return 1.0 / self.eta if self.eta > 0 else math.inf

    def to_dict(self) -> dict:
        return {
            'q': self.q,
            'p': self.p,
            'epsilon': self.epsilon,
            'T': self.T,
            'eta': self.eta,
            'iota': self.iota,
            'seed': self.seed,
        }

    def __repr__(self) -> str:
        return "SolverParams(q={!r}, p={!r}, epsilon={!r}, T={}, eta={!r}, iota={!r}, seed={})".format(
            self.q, self.p, self.epsilon, self.T, self.eta, self.iota, self.seed)


class SolverState:
    """y_t (unprojected primal), x_t (projected), w_t (dual weights), t.

        :param y: Unprojected primal vector
        :param w: Strictly positive dual weights
        :param q: Primal exponent used for the projection
        :param radius: Primal ball radius
    """

    def __init__(self, y: np.ndarray, w: np.ndarray, q: float, radius: float = 1.0) -> None:
        self.q = q
        self.radius = radius
        self.y = y
        self.w = w
        self.t = 0
        self.x = project_lq_ball(y, q, radius)

    @classmethod
    def initial(cls, n: int, d: int, q: float, radius: float = 1.0) -> 'SolverState':
        """y_1 = 0, w_1 = 1."""
        return cls(np.zeros(d), np.ones(n), q, radius)

    def set_primal(self, y: np.ndarray) -> None:
        """Replace y and recompute x = projection of y."""
        self.y = y
        self.x = project_lq_ball(y, self.q, self.radius)

    def distribution(self) -> np.ndarray:
        """p_t = w_t / ‖w_t‖_1."""
        return self.w / self.w.sum()

    def rescale(self) -> None:
        """Divide w by its maximum; p_t is unchanged."""
        self.w = self.w / self.w.max()
