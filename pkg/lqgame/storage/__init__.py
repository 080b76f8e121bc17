"""Matrix storage backends for game instances

This module provides the base class for entry-access backends. A
:class:`~lqgame.instance.GameInstance` never touches matrix data directly;
it asks its backend for single entries, whole rows or whole columns and
charges the query counter itself.
"""

import numpy as np


class MatrixStorage():
    """Base class for matrix storage backends.

    Backends implement only :meth:`_entry`; :meth:`_row` and :meth:`_column`
    fall back to entry loops and can be overridden with vectorised versions.

    :param n: Row count
    :param d: Column count
    """

    def __init__(self, n: int, d: int) -> None:
        self.n = int(n)
        self.d = int(d)


    def entry(self, i: int, j: int) -> float:
        """Return A_ij (no bounds checks, no query accounting)."""
        return float(self._entry(i, j))


    def row(self, i: int) -> np.ndarray:
        """Return row A_i as a float64 array."""
        return np.asarray(self._row(i), dtype=np.float64)


    def column(self, j: int) -> np.ndarray:
        """Return column j as a float64 array."""
        return np.asarray(self._column(j), dtype=np.float64)


    def dense(self) -> np.ndarray:
        """Materialise the whole matrix row by row."""
        return np.vstack([self.row(i) for i in range(self.n)])


    def _entry(self, i: int, j: int) -> float:
        """Read a single entry.

        :param i: Row index
        :param j: Column index

        :returns: Entry value
        """
        raise NotImplementedError("_entry() method not implemented in MatrixStorage subclass")


    def _row(self, i: int):
        return [self._entry(i, j) for j in range(self.d)]


    def _column(self, j: int):
        return [self._entry(i, j) for i in range(self.n)]
