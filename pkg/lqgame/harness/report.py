"""JSON report emission

    Top-level keys always come in the order ``version, mode, params,
    records`` followed by whatever the mode adds (``slope``,
    ``certificate``, ``quantum_sim``, ``summary``). Floats are written in
    their shortest round-trip form, which never needs more than 17
    significant digits and reads back bit-exactly; non-finite values are
    written as null. Vectors longer than ``INLINE_VECTOR_MAX`` go to a
    little-endian f64 sidecar next to the report and the record keeps
    ``{"path", "length", "dtype"}`` instead.
"""

import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from lqgame.constants.formats import BINARY_ENTRY_FORMAT, INLINE_VECTOR_MAX, REPORT_VERSION

logger = logging.getLogger(__name__)

VECTOR_KEYS = ("x_bar", "w")


def jsonable(value):
    """Convert numpy scalars and arrays, tuples and paths into JSON-ready values."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


def _sidecar(vector, path: Path, key: str, index: int) -> dict:
    target = path.with_name(f"{path.stem}.{key}.{index}.bin")
    data = np.ascontiguousarray(vector, dtype=BINARY_ENTRY_FORMAT)
    target.write_bytes(data.tobytes())
    logger.debug("Wrote %d-entry %s to %s", data.size, key, target)
    return {'path': target.name, 'length': int(data.size), 'dtype': BINARY_ENTRY_FORMAT}


def _externalise(records: list, path: Path) -> list:
    moved = []
    for index, record in enumerate(records):
        record = dict(record)
        for key in VECTOR_KEYS:
            vector = record.get(key)
            if isinstance(vector, (list, np.ndarray)) and len(vector) > INLINE_VECTOR_MAX:
                record[key] = _sidecar(vector, path, key, index)
        moved.append(record)
    return moved


def build_report(mode: str, params: dict, records: list = None, **sections) -> dict:
    """Assemble a report document with the fixed top-level key order."""
    document = {
        'version': REPORT_VERSION,
        'mode': mode,
        'params': dict(params),
        'records': list(records or []),
    }
    for key, value in sections.items():
        if value is not None:
            document[key] = value
    return document


def emit_report(document: dict, path=None, stream=None) -> str:
    """Write a report as JSON.

        With a path, long vectors are moved to sidecar files beside it.
        Without one the text goes to ``stream`` (stdout by default) and every
        vector stays inline.

        Floats use the shortest repr that reads back to the same double.
        That is at most 17 significant digits and carries exactly the
        information of a %.17g rendering, so readers parsing either form
        recover the same value.

        :param document: Output of :func:`build_report`
        :param path: Destination file, or None
        :param stream: Text stream used when path is None

        :returns: The JSON text
        :rtype: str

        :raises OSError: If the report or a sidecar cannot be written
    """
    if path is not None:
        path = Path(path)
        document = dict(document, records=_externalise(document.get('records', []), path))
    text = json.dumps(jsonable(document), indent=2, allow_nan=False) + "\n"
    if path is not None:
        path.write_text(text)
        logger.info("Report written to %s", path)
    else:
        (stream or sys.stdout).write(text)
    return text


def load_report(path) -> dict:
    return json.loads(Path(path).read_text())


def load_sidecar(report_path, reference: dict) -> np.ndarray:
    """Read a vector stored by :func:`emit_report` next to ``report_path``."""
    target = Path(report_path).with_name(reference['path'])
    return np.frombuffer(target.read_bytes(), dtype=reference['dtype']).astype(np.float64)
