"""Norm-pair arithmetic, ℓs norms and ℓq-ball projection.

    All vectors are 1-D ``numpy`` float64 arrays. Conversions through
    :func:`as_vector` reject NaN and Inf so every public result stays finite.
"""

import math

import numpy as np

from lqgame.constants import CONJUGATE_TOL
from lqgame.exceptions import LqGameUsageError


def as_vector(values, name: str = "vector") -> np.ndarray:
    """Convert input to a finite 1-D float64 array.

        :param values: Array-like input
        :param name: Name used in error messages

        :returns: Contiguous float64 copy-or-view
        :rtype: numpy.ndarray

        :raises LqGameUsageError: If input is not 1-D, empty or not finite
    """
    vector = np.ascontiguousarray(values, dtype=np.float64)
    if vector.ndim != 1 or vector.size == 0:
        raise LqGameUsageError(f"{name} must be a non-empty 1-D array, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise LqGameUsageError(f"{name} contains NaN or Inf")
    return vector


def conjugate(exponent: float) -> float:
    """Return the Hölder conjugate s/(s-1) of an exponent s > 1."""
    if exponent <= 1.0:
        raise LqGameUsageError(f"Conjugate exponent requires s > 1, got {exponent}")
    if math.isinf(exponent):
        return 1.0
    return exponent / (exponent - 1.0)


class NormPair:
    """Conjugate exponents (q, p) with 1/p + 1/q = 1, q in (1, 2], p in [2, inf).

        The primal player lives in the ℓq unit ball, rows of the game matrix
        live in the ℓp unit ball.

        :param q: Primal exponent in (1, 2]
        :param p: Optional conjugate; derived from q when omitted

        :raises LqGameUsageError: If q is out of range or p is not conjugate
    """

    def __init__(self, q: float, p: float = None) -> None:
        q = float(q)
        if not 1.0 < q <= 2.0:
            raise LqGameUsageError(f"q must be in (1, 2], got {q}")
        if p is None:
            p = conjugate(q)
        p = float(p)
        if p < 2.0 - CONJUGATE_TOL:
            raise LqGameUsageError(f"p must be in [2, inf), got {p}")
        if abs(1.0 / p + 1.0 / q - 1.0) > CONJUGATE_TOL:
            raise LqGameUsageError(f"p={p} and q={q} are not conjugate")
        self.q = q
        self.p = p

    @classmethod
    def from_p(cls, p: float) -> 'NormPair':
        """Build the pair from the row-side exponent p >= 2."""
        if p < 2.0:
            raise LqGameUsageError(f"p must be in [2, inf), got {p}")
        return cls(conjugate(p), p)

    def to_dict(self) -> dict:
        return {'q': self.q, 'p': self.p}

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormPair):
            return NotImplemented
        return self.q == other.q and self.p == other.p

    def __repr__(self) -> str:
        return "NormPair(q={!r}, p={!r})".format(self.q, self.p)


def lq_norm(v, s: float) -> float:
    """ℓs norm (Σ|v_j|^s)^(1/s) for s >= 1; inf gives the max norm.

        Computed on the vector scaled by its largest magnitude so large
        exponents do not overflow.

        :param v: Finite vector
        :param s: Exponent, s >= 1

        :returns: Norm value, 0 for the zero vector
        :rtype: float

        :raises LqGameUsageError: If s < 1
    """
    if s < 1.0:
        raise LqGameUsageError(f"Norm exponent must be >= 1, got {s}")
    magnitudes = np.abs(np.asarray(v, dtype=np.float64))
    largest = float(magnitudes.max()) if magnitudes.size else 0.0
    if largest == 0.0:
        return 0.0
    if math.isinf(s):
        return largest
    scaled = magnitudes / largest
    return largest * float(np.sum(scaled ** s)) ** (1.0 / s)


def sgnpow(v, exponent: float):
    """Signed power sgn(v)|v|^exponent, elementwise; sgn(0) = 0."""
    v = np.asarray(v, dtype=np.float64)
    return np.sign(v) * np.abs(v) ** exponent


def project_lq_ball(y, q: float, radius: float = 1.0) -> np.ndarray:
    """Scale y into the ℓq ball of the given radius: y * radius / max(radius, ‖y‖_q).

        The scale factor is nudged down by ulps until the result is inside
        the ball, so projecting twice returns the same array bit for bit.

        :param y: Vector to project
        :param q: Exponent in (1, 2]
        :param radius: Ball radius, 1 for the unit ball

        :returns: Projected vector (a copy)
        :rtype: numpy.ndarray
    """
    y = np.array(y, dtype=np.float64)
    norm = lq_norm(y, q)
    if norm <= radius:
        return y
    scale = radius / norm
    projected = y * scale
    while lq_norm(projected, q) > radius:
        scale = float(np.nextafter(scale, 0.0))
        projected = y * scale
    return projected
