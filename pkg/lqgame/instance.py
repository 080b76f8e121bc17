"""Oracle-access game matrices with query counting

    A :class:`GameInstance` wraps a storage backend and a monotone query
    counter. Every entry read through the instance is charged exactly once;
    row and column reads charge d and n entries respectively. Internal
    solver vectors are never charged.

    Example::

        import numpy as np
        from lqgame.instance import normalize_rows

        instance = normalize_rows(np.eye(2), p=2.0)
        instance.query_entry(0, 0)   # 1.0
        instance.queries             # 1
"""

import logging
import threading

import numpy as np

from lqgame.constants import ROW_NORM_SLACK
from lqgame.error_mapping import raise_for_index
from lqgame.exceptions import LqGameInstanceError, LqGameUsageError
from lqgame.norms import lq_norm
from lqgame.storage import MatrixStorage
from lqgame.storage.dense import DenseStorage

logger = logging.getLogger(__name__)


class QueryCounter:
    """Thread-safe monotone tally of entry reads."""

    def __init__(self) -> None:
        self._count = 0
        self._lock = threading.Lock()

    def charge(self, amount: int = 1) -> None:
        """Add amount (>= 0) to the tally."""
        if amount < 0:
            raise LqGameUsageError("Query counter never decrements")
        with self._lock:
            self._count += amount

    @property
    def count(self) -> int:
        return self._count

    def __repr__(self) -> str:
        return "QueryCounter({})".format(self._count)


class GameInstance:
    """n x d real matrix with rows in the ℓp unit ball, accessed through a counter.

        Dense storage is validated on construction: rows with
        ‖A_i‖_p <= 1 + 1e-9 are accepted (the ones above 1 are clamped to
        norm 1), anything larger is rejected. Generator storage is trusted,
        since its rows are valid by construction.

        :param storage: Storage backend
        :param p: Row-ball exponent, p >= 2 (inf allowed)
        :param counter: Counter to charge; a fresh one by default
        :param validate: Check row norms for dense storage

        :raises LqGameInstanceError: If a dense row lies outside B_p
    """

    def __init__(self, storage: MatrixStorage, p: float = 2.0,
                 counter: QueryCounter = None, validate: bool = True) -> None:
        if p < 1.0:
            raise LqGameUsageError(f"Row norm exponent must be >= 1, got {p}")
        if validate and isinstance(storage, DenseStorage):
            storage = self._clamped(storage, p)
        self._storage = storage
        self.p = float(p)
        self.counter = counter if counter is not None else QueryCounter()


    @staticmethod
    def _clamped(storage: DenseStorage, p: float) -> DenseStorage:
        data = storage.data
        norms = np.array([lq_norm(row, p) for row in data])
        worst = int(np.argmax(norms))
        if norms[worst] > 1.0 + ROW_NORM_SLACK:
            raise LqGameInstanceError(
                f"Row {worst} has l{p:g} norm {norms[worst]:.12g} > 1"
            )
        over = norms > 1.0
        if not np.any(over):
            return storage
        logger.debug("Clamping %d rows with norm in (1, 1+%g]", int(over.sum()), ROW_NORM_SLACK)
        clamped = np.array(data)
        clamped[over] /= norms[over][:, None]
        return DenseStorage(clamped)


    @property
    def n(self) -> int:
        return self._storage.n

    @property
    def d(self) -> int:
        return self._storage.d

    @property
    def shape(self) -> tuple:
        return (self._storage.n, self._storage.d)

    @property
    def storage(self) -> MatrixStorage:
        return self._storage

    @property
    def queries(self) -> int:
        """Total entry reads charged so far."""
        return self.counter.count


    def query_entry(self, i: int, j: int) -> float:
        """Read A_ij, charging one query.

            :raises LqGameUsageError: If i or j is out of range
        """
        raise_for_index("Row", i, self.n)
        raise_for_index("Column", j, self.d)
        self.counter.charge(1)
        return self._storage.entry(i, j)


    def query_row(self, i: int) -> np.ndarray:
        """Read row A_i, charging d queries."""
        raise_for_index("Row", i, self.n)
        self.counter.charge(self.d)
        return self._storage.row(i)


    def query_column(self, j: int) -> np.ndarray:
        """Read column j, charging n queries."""
        raise_for_index("Column", j, self.d)
        self.counter.charge(self.n)
        return self._storage.column(j)


    def dense(self) -> np.ndarray:
        """Read the whole matrix, charging n*d queries."""
        self.counter.charge(self.n * self.d)
        return self._storage.dense()


    def fork(self) -> 'GameInstance':
        """Same storage, fresh counter, for an independent run."""
        return GameInstance(self._storage, self.p, validate=False)


    def merge(self, other: 'GameInstance') -> None:
        """Add the queries charged on a forked instance to this counter."""
        self.counter.charge(other.queries)


    def __repr__(self) -> str:
        return "GameInstance(n={}, d={}, p={!r}, storage={}, queries={})".format(
            self.n, self.d, self.p, type(self._storage).__name__, self.queries)


def query_entry(instance: GameInstance, i: int, j: int) -> float:
    """Read A_ij from an instance, charging one query."""
    return instance.query_entry(i, j)


def normalize_rows(matrix, p: float) -> GameInstance:
    """Scale each row by 1/max{1, ‖row‖_p} and wrap the result in a dense instance.

        :param matrix: 2-D array-like
        :param p: Row-ball exponent

        :returns: Dense instance whose rows lie in B_p
        :rtype: GameInstance

        :raises LqGameUsageError: If matrix is empty or not 2-D
    """
    data = np.array(matrix, dtype=np.float64)
    if data.ndim != 2 or data.size == 0:
        raise LqGameUsageError(f"Matrix must be a non-empty 2-D array, got shape {data.shape}")
    norms = np.array([lq_norm(row, p) for row in data])
    data /= np.maximum(1.0, norms)[:, None]
    return GameInstance(DenseStorage(data), p)
