"""Solver output"""

import numpy as np

from lqgame.norms import lq_norm


class SolveReport:
    """Result of one solver run.

        Attributes:

            x_bar (numpy.ndarray): Average iterate (1/T) Σ x_t
            i_trace (numpy.ndarray): Sampled rows i_1..i_T
            j_trace (numpy.ndarray): Sampled columns, -1 where x_t = 0 and no draw happened
            primal_value (float): min_i A_i·x_bar (evaluated on a forked counter)
            queries (int): Entry reads charged by the run itself
            evaluation_queries (int): Entry reads spent evaluating primal_value
            wall_time (float): Seconds spent in the iteration loop
            iterations (int): T
            params: The :class:`~lqgame.solver.params.SolverParams` used
            path (str): ``"lq-l1"`` or ``"l1-l1"``
            accepted_error (float): Error the guarantee is stated for
            dual_average (numpy.ndarray): (1/T) Σ p_t, a feasible simplex point
            query_budget (int): Upper bound T·(n + d) on queries
            succinct: :class:`~lqgame.quantum.solver.SuccinctSolution` (quantum simulation only)
            diagnostics (dict): Run-specific flags and counters
    """

    def __init__(self, x_bar, i_trace, j_trace, primal_value: float, queries: int,
                 wall_time: float, params, path: str = "lq-l1",
                 accepted_error: float = None, evaluation_queries: int = 0,
                 dual_average=None, query_budget: int = None, succinct=None,
                 diagnostics: dict = None) -> None:
        self.x_bar = np.asarray(x_bar, dtype=np.float64)
        self.i_trace = np.asarray(i_trace, dtype=np.int64)
        self.j_trace = np.asarray(j_trace, dtype=np.int64)
        self.primal_value = float(primal_value)
        self.queries = int(queries)
        self.evaluation_queries = int(evaluation_queries)
        self.wall_time = float(wall_time)
        self.params = params
        self.path = path
        self.accepted_error = float(params.epsilon if accepted_error is None else accepted_error)
        self.dual_average = None if dual_average is None else np.asarray(dual_average, dtype=np.float64)
        self.query_budget = query_budget
        self.succinct = succinct
        self.diagnostics = diagnostics or {}

    @property
    def iterations(self) -> int:
        return int(self.i_trace.size)

    def x_bar_norm(self, q: float) -> float:
        return lq_norm(self.x_bar, q)

    def to_dict(self, include_traces: bool = False) -> dict:
        """Export as a JSON-ready dictionary.

            :param include_traces: Add the sampled i/j sequences

            :returns: Report fields
            :rtype: dict
        """
        data = {
            'path': self.path,
            'achieved_value': self.primal_value,
            'queries': self.queries,
            'evaluation_queries': self.evaluation_queries,
            'iterations': self.iterations,
            'wall_time': self.wall_time,
            'accepted_error': self.accepted_error,
            'query_budget': self.query_budget,
            'params': self.params.to_dict(),
            'x_bar': self.x_bar.tolist(),
        }
        if self.diagnostics:
            data['diagnostics'] = dict(self.diagnostics)
        if include_traces:
            data['traces'] = {
                'i': self.i_trace.tolist(),
                'j': self.j_trace.tolist(),
            }
        return data

    def __str__(self) -> str:
        return "SolveReport({}, value={:.6f}, T={}, queries={}, {:.3f}s)".format(
            self.path, self.primal_value, self.iterations, self.queries, self.wall_time)

    def __repr__(self) -> str:
        return "SolveReport(path={!r}, primal_value={!r}, iterations={}, queries={})".format(
            self.path, self.primal_value, self.iterations, self.queries)
