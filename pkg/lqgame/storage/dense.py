"""Dense in-memory storage"""

import numpy as np

from lqgame.storage import MatrixStorage
from lqgame.exceptions import LqGameUsageError, LqGameInstanceError


class DenseStorage(MatrixStorage):
    """Row-major float64 matrix held in memory.

    :param matrix: 2-D array-like, copied into a C-contiguous float64 array

    :raises LqGameUsageError: If matrix is not 2-D or is empty
    :raises LqGameInstanceError: If matrix contains NaN or Inf
    """

    def __init__(self, matrix) -> None:
        data = np.array(matrix, dtype=np.float64, order="C")
        if data.ndim != 2 or data.shape[0] == 0 or data.shape[1] == 0:
            raise LqGameUsageError(f"Matrix must be a non-empty 2-D array, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise LqGameInstanceError("Matrix contains NaN or Inf entries")
        data.setflags(write=False)
        super().__init__(data.shape[0], data.shape[1])
        self._data = data

    @property
    def data(self) -> np.ndarray:
        """Read-only view of the stored matrix."""
        return self._data

    def _entry(self, i: int, j: int) -> float:
        return self._data[i, j]

    def _row(self, i: int):
        return self._data[i]

    def _column(self, j: int):
        return self._data[:, j]

    def dense(self) -> np.ndarray:
        return self._data
