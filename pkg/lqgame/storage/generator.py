"""Generator-backed storage

Entries are computed on demand by closures, so implicit matrices (hard
instances, the Carathéodory difference matrix, large synthetic sweeps)
take O(1) memory while queries are still counted honestly.

Example::

    from lqgame.storage.generator import GeneratorStorage
    from lqgame.instance import GameInstance

    storage = GeneratorStorage(4, 4, lambda i, j: 1.0 if i == j else 0.0)
    instance = GameInstance(storage, p=2.0)
    instance.query_entry(0, 0)  # 1.0, counter now 1
"""

from typing import Callable, Optional

from lqgame.storage import MatrixStorage


class GeneratorStorage(MatrixStorage):
    """Storage whose entries come from a closure.

    :param n: Row count
    :param d: Column count
    :param entry: Callable (i, j) -> float
    :param row: Optional vectorised callable i -> array of length d
    :param column: Optional vectorised callable j -> array of length n
    """

    def __init__(
        self,
        n: int,
        d: int,
        entry: Callable[[int, int], float],
        row: Optional[Callable[[int], object]] = None,
        column: Optional[Callable[[int], object]] = None,
    ) -> None:
        super().__init__(n, d)
        self._entry_fn = entry
        self._row_fn = row
        self._column_fn = column

    def _entry(self, i: int, j: int) -> float:
        return self._entry_fn(i, j)

    def _row(self, i: int):
        if self._row_fn is not None:
            return self._row_fn(i)
        return super()._row(i)

    def _column(self, j: int):
        if self._column_fn is not None:
            return self._column_fn(j)
        return super()._column(j)
