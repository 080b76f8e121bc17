"""Sampling and estimation primitives of the dual side

    - :class:`RngStream`: seeded counter-based generator (numpy Philox)
    - :func:`lq_sample`: draw j with probability |x_j|^q / ‖x‖_q^q
    - :func:`unbiased_estimate`: A_i(j)‖x‖_q^q / (sgn(x_j)|x_j|^(q-1)), mean A_i·x
    - :func:`clip`: truncation to [-M, M]
    - :func:`categorical_sample`: draw i with probability w_i / Σw

    Samplers use inverse CDF over a fresh prefix sum, O(d) per draw.
"""

import numpy as np

from lqgame.exceptions import (
    LqGameInternalError,
    LqGameUsageError,
    LqGameZeroVectorError,
)
from lqgame.norms import sgnpow


class RngStream:
    """Deterministic random stream for one solver run.

        Identical seeds give identical sample sequences. Streams are not
        shared between threads; use :meth:`spawn` for child streams.

        :param seed: Non-negative integer seed
    """

    def __init__(self, seed: int = 0) -> None:
        if seed < 0:
            raise LqGameUsageError(f"Seed must be non-negative, got {seed}")
        self.seed = int(seed)
        self._generator = np.random.Generator(np.random.Philox(self.seed))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self._generator.uniform(low, high, size)

    def random(self) -> float:
        """Uniform draw in [0, 1)."""
        return float(self._generator.random())

    def spawn(self, key: int) -> 'RngStream':
        """Independent child stream derived from this seed and a key."""
        sequence = np.random.SeedSequence([self.seed, int(key)])
        return RngStream(int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1)))

    def __repr__(self) -> str:
        return "RngStream(seed={})".format(self.seed)


def _inverse_cdf(weights: np.ndarray, rng: RngStream) -> int:
    cumulative = np.cumsum(weights)
    total = cumulative[-1]
    index = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
    if index >= weights.size:
        # u rounded up to the total; fall back to the last positive weight
        index = int(np.flatnonzero(weights)[-1])
    return index


def categorical_sample(weights, rng: RngStream) -> int:
    """Draw index i with probability w_i / Σw.

        :param weights: Non-negative weights, not all zero
        :param rng: Random stream

        :returns: Sampled index
        :rtype: int

        :raises LqGameUsageError: If weights are negative or all zero
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 1 or weights.size == 0:
        raise LqGameUsageError("Weights must be a non-empty 1-D array")
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise LqGameUsageError("Weights must be finite and non-negative")
    if not np.any(weights > 0):
        raise LqGameUsageError("Weights are all zero")
    return _inverse_cdf(weights, rng)


def lq_probabilities(x, q: float) -> np.ndarray:
    """The ℓq-sampling law |x_j|^q / ‖x‖_q^q.

        :raises LqGameZeroVectorError: If x is the zero vector
    """
    magnitudes = np.abs(np.asarray(x, dtype=np.float64)) ** q
    total = magnitudes.sum()
    if total == 0.0:
        raise LqGameZeroVectorError("ℓq-sampling from the zero vector")
    return magnitudes / total


def lq_sample(x, q: float, rng: RngStream) -> int:
    """Draw j with probability |x_j|^q / ‖x‖_q^q.

        Only magnitudes matter, so x and -x (or any positive multiple of x)
        induce the same law.

        :raises LqGameZeroVectorError: If x is the zero vector
    """
    magnitudes = np.abs(np.asarray(x, dtype=np.float64)) ** q
    if not np.any(magnitudes > 0):
        raise LqGameZeroVectorError("ℓq-sampling from the zero vector")
    return _inverse_cdf(magnitudes, rng)


def estimate_scale(x, j: int, q: float) -> float:
    """Importance weight ‖x‖_q^q / (sgn(x_j)|x_j|^(q-1)) applied to A_i(j).

        :raises LqGameInternalError: If x_j = 0 (it cannot have been sampled)
    """
    x = np.asarray(x, dtype=np.float64)
    if x[j] == 0.0:
        raise LqGameInternalError(f"Coordinate {j} is zero and cannot have been ℓq-sampled")
    mass = float(np.sum(np.abs(x) ** q))
    return mass / float(sgnpow(x[j], q - 1.0))


def unbiased_estimate(instance, i: int, x, j: int, q: float) -> float:
    """Unbiased estimate of A_i·x from one ℓq-sampled coordinate.

        Charges one query (the entry A_i(j)).

        :param instance: Game instance
        :param i: Row index
        :param x: Current primal vector
        :param j: Coordinate drawn by :func:`lq_sample` from x
        :param q: Sampling exponent

        :returns: A_i(j)‖x‖_q^q / (sgn(x_j)|x_j|^(q-1))
        :rtype: float
    """
    scale = estimate_scale(x, j, q)
    return instance.query_entry(i, j) * scale


def clip(v, M: float):
    """Truncate v (scalar or array) to [-M, M]; M may be inf.

        :raises LqGameUsageError: If M <= 0
    """
    if not M > 0:
        raise LqGameUsageError(f"Clip threshold must be positive, got {M}")
    clipped = np.clip(v, -M, M)
    if np.ndim(clipped) == 0:
        return float(clipped)
    return clipped
