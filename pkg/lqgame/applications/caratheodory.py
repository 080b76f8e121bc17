"""Approximate Carathéodory by solving a matrix game

    For vertices v_1..v_n and a target u in their convex hull (all in the
    ℓp unit ball), the game on the rows (v_i - u)/2 has value
    min over the simplex of ‖Vᵀp - u‖_p / 2 = 0. Solving it to error eps/2
    and taking the histogram of the sampled dual rows i_1..i_T gives a
    convex combination with at most T vertices and residual about eps.

    Example::

        import numpy as np
        from lqgame.applications.caratheodory import caratheodory_solve, caratheodory_residual

        vertices = np.array([[1.0, 0.0], [-1.0, 0.0]])
        u = np.zeros(2)
        combo = caratheodory_solve(vertices, u, p=2.0, epsilon=0.2, seed=1)
        caratheodory_residual(vertices, u, combo, p=2.0)   # <= 0.2 (w.p. >= 2/3)
"""

import logging

import numpy as np

from lqgame.constants import ROW_NORM_SLACK
from lqgame.exceptions import LqGameDimensionError, LqGameUsageError
from lqgame.instance import GameInstance
from lqgame.norms import NormPair, as_vector, lq_norm
from lqgame.solver.classical import solve_lq_l1
from lqgame.solver.dispatch import solve_dispatch
from lqgame.storage.generator import GeneratorStorage

logger = logging.getLogger(__name__)

WEIGHT_SUM_TOL = 1e-12


class SparseConvexCombination:
    """Weights on a subset of vertices, summing to one.

        :param indices: Distinct vertex indices
        :param weights: Matching positive weights
        :param iterations: Solver iteration count T (bounds the support)

        :raises LqGameUsageError: On non-positive weights, repeated indices
            or a sum away from 1
    """

    def __init__(self, indices, weights, iterations: int = None) -> None:
        indices = np.asarray(indices, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.float64)
        if indices.shape != weights.shape or indices.ndim != 1 or indices.size == 0:
            raise LqGameUsageError("indices and weights must be matching non-empty 1-D arrays")
        if np.unique(indices).size != indices.size:
            raise LqGameUsageError("indices must be distinct")
        if np.any(weights <= 0):
            raise LqGameUsageError("weights must be positive")
        if abs(float(weights.sum()) - 1.0) > WEIGHT_SUM_TOL:
            raise LqGameUsageError(f"weights sum to {float(weights.sum())!r}, not 1")
        self.indices = indices
        self.weights = weights
        self.iterations = iterations
        self.report = None

    @classmethod
    def from_samples(cls, samples, n: int) -> 'SparseConvexCombination':
        """Empirical distribution of sampled vertex indices."""
        samples = np.asarray(samples, dtype=np.int64)
        counts = np.bincount(samples, minlength=n)
        indices = np.flatnonzero(counts)
        return cls(indices, counts[indices] / samples.size, iterations=int(samples.size))

    @property
    def support_size(self) -> int:
        return int(self.indices.size)

    def point(self, vertices) -> np.ndarray:
        """Σ weight_i·v_i."""
        vertices = np.asarray(vertices, dtype=np.float64)
        return self.weights @ vertices[self.indices]

    def as_mapping(self) -> dict:
        return {int(i): float(w) for i, w in zip(self.indices, self.weights)}

    def to_dict(self) -> dict:
        return {
            'support_size': self.support_size,
            'iterations': self.iterations,
            'indices': self.indices.tolist(),
            'weights': self.weights.tolist(),
        }

    def __str__(self) -> str:
        return "SparseConvexCombination(support={}, T={})".format(self.support_size, self.iterations)

    def __repr__(self) -> str:
        return "SparseConvexCombination({!r})".format(self.as_mapping())


def _checked_inputs(vertices, u, p: float) -> tuple:
    vertices = np.asarray(vertices, dtype=np.float64)
    if vertices.ndim != 2 or vertices.size == 0:
        raise LqGameUsageError(f"vertices must be a non-empty 2-D array, got shape {vertices.shape}")
    u = as_vector(u, "u")
    if u.size != vertices.shape[1]:
        raise LqGameDimensionError(
            f"Target has dimension {u.size}, vertices have dimension {vertices.shape[1]}")
    if not np.all(np.isfinite(vertices)):
        raise LqGameUsageError("vertices contain NaN or Inf")
    norms = np.array([lq_norm(v, p) for v in vertices])
    if float(norms.max()) > 1.0 + ROW_NORM_SLACK:
        raise LqGameUsageError(f"Vertex {int(np.argmax(norms))} lies outside the ℓ{p:g} unit ball")
    if lq_norm(u, p) > 1.0 + ROW_NORM_SLACK:
        raise LqGameUsageError(f"Target lies outside the ℓ{p:g} unit ball")
    return vertices, u


def difference_instance(vertices, u, p: float) -> GameInstance:
    """Implicit instance with rows (v_i - u)/2; entries computed on demand."""
    vertices, u = _checked_inputs(vertices, u, p)
    n, d = vertices.shape
    storage = GeneratorStorage(
        n, d,
        lambda i, j: 0.5 * (vertices[i, j] - u[j]),
        row=lambda i: 0.5 * (vertices[i] - u),
        column=lambda j: 0.5 * (vertices[:, j] - u[j]),
    )
    return GameInstance(storage, p)


def caratheodory_solve(vertices, u, p: float, epsilon: float, seed: int = 0,
                       use_dispatch: bool = False, log_base: str = "e") -> SparseConvexCombination:
    """Sparse convex combination of vertices approximating u in ℓp.

        :param vertices: n x d array, rows in the ℓp unit ball
        :param u: Target in the convex hull of the rows
        :param p: Exponent >= 2
        :param epsilon: Residual target in (0, 1)
        :param seed: RNG seed
        :param use_dispatch: Route through :func:`~lqgame.solver.dispatch.solve_dispatch`
        :param log_base: Dispatcher threshold base

        :returns: Combination with at most T vertices; ``report`` holds the solver run
        :rtype: SparseConvexCombination

        :raises LqGameDimensionError: If u and the vertices disagree in dimension
    """
    pair = NormPair.from_p(p)
    instance = difference_instance(vertices, u, pair.p)
    if use_dispatch:
        report = solve_dispatch(instance, pair.q, epsilon / 2.0, seed, log_base=log_base)
    else:
        report = solve_lq_l1(instance, pair.q, epsilon / 2.0, seed)
    combo = SparseConvexCombination.from_samples(report.i_trace, instance.n)
    combo.report = report
    logger.info("Carathéodory: %s from %d queries", combo, report.queries)
    return combo


def caratheodory_residual(vertices, u, combo: SparseConvexCombination, p: float) -> float:
    """‖Σ weight_i·v_i - u‖_p by dense evaluation."""
    vertices = np.asarray(vertices, dtype=np.float64)
    u = as_vector(u, "u")
    if u.size != vertices.shape[1]:
        raise LqGameDimensionError(
            f"Target has dimension {u.size}, vertices have dimension {vertices.shape[1]}")
    return lq_norm(combo.point(vertices) - u, p)
