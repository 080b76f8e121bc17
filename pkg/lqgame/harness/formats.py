"""Instance and data file formats

    Three instance encodings are recognised by content, not by suffix:

    - **Binary** (starts with ``LQG1``)::

        Bytes 0-3:   magic b"LQG1"
        Bytes 4-7:   n (u32, little-endian)
        Bytes 8-11:  d (u32, little-endian)
        Bytes 12-19: p (f64, little-endian)
        Bytes 20-:   n·d entries (f64, little-endian, row-major)

    - **Hard stanza**: one line ``hard: case=<1|2> n=<> d=<> l=<> [k=<>] p=<>``,
      loaded as a generator-backed instance
    - **CSV**: header ``n,d,p`` followed by n lines of d comma-separated decimals

    Vertex and point files are headerless CSV matrices; target and label
    files hold one vector, comma- or newline-separated. Blank lines and
    lines starting with ``#`` are skipped in every text format.

    Example::

        from lqgame.harness.formats import load_instance, save_instance

        instance = load_instance("game.csv")
        save_instance(instance, "game.lqg")
"""

import logging
import math
import struct
from pathlib import Path

import numpy as np

from lqgame.adversarial import HardInstanceSpec, build_hard_instance
from lqgame.constants.formats import (
    BINARY_ENTRY_FORMAT,
    BINARY_HEADER_FORMAT,
    BINARY_HEADER_SIZE,
    BINARY_MAGIC,
    CSV_HEADER_FIELDS,
    HARD_STANZA_KEYS,
    HARD_STANZA_PREFIX,
)
from lqgame.exceptions import LqGameError, LqGameParseError, LqGameUsageError
from lqgame.instance import GameInstance
from lqgame.storage.dense import DenseStorage

logger = logging.getLogger(__name__)

FORMAT_CSV = "csv"
FORMAT_BINARY = "binary"
FORMAT_HARD = "hard"

CSV_SUFFIXES = (".csv", ".txt")


def _content_lines(text: str) -> list:
    """(line_number, stripped_line) for every non-blank, non-comment line."""
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((number, stripped))
    return lines


def _parse_floats(line: str, number: int, path) -> list:
    values = []
    for field in line.split(","):
        try:
            value = float(field)
        except ValueError:
            raise LqGameParseError(f"{path}: not a number {field.strip()!r}",
                                   location=f"line {number}") from None
        if not math.isfinite(value):
            raise LqGameParseError(f"{path}: non-finite entry {field.strip()!r}",
                                   location=f"line {number}")
        values.append(value)
    return values


def _read_bytes(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except FileNotFoundError:
        raise LqGameUsageError(f"No such file: {path}") from None


def _read_text(path) -> str:
    raw = _read_bytes(path)
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise LqGameParseError(f"{path}: not UTF-8 text", location=f"offset {e.start}") from None


def _wrap_dense(matrix: np.ndarray, p: float, path, location: str) -> GameInstance:
    try:
        return GameInstance(DenseStorage(matrix), p)
    except LqGameError as e:
        raise LqGameParseError(f"{path}: {e}", location=location) from e


def parse_csv_instance(text: str, path="<string>") -> GameInstance:
    """Parse the ``n,d,p`` CSV encoding.

        :raises LqGameParseError: On a malformed header, wrong row count or
            width, non-numeric or non-finite entries
    """
    lines = _content_lines(text)
    if not lines:
        raise LqGameParseError(f"{path}: empty instance file", location="line 1")
    number, header = lines[0]
    fields = header.split(",")
    if len(fields) != CSV_HEADER_FIELDS:
        raise LqGameParseError(f"{path}: header must be 'n,d,p', got {header!r}",
                               location=f"line {number}")
    try:
        n, d, p = int(fields[0]), int(fields[1]), float(fields[2])
    except ValueError:
        raise LqGameParseError(f"{path}: header must be 'n,d,p', got {header!r}",
                               location=f"line {number}") from None
    if n < 1 or d < 1:
        raise LqGameParseError(f"{path}: shape {n}x{d} must be positive", location=f"line {number}")

    rows = lines[1:]
    if len(rows) != n:
        last = rows[-1][0] if rows else number
        raise LqGameParseError(f"{path}: header announces {n} rows, found {len(rows)}",
                               location=f"line {last}")
    matrix = np.empty((n, d))
    for index, (number, line) in enumerate(rows):
        values = _parse_floats(line, number, path)
        if len(values) != d:
            raise LqGameParseError(f"{path}: row {index} has {len(values)} entries, expected {d}",
                                   location=f"line {number}")
        matrix[index] = values
    return _wrap_dense(matrix, p, path, "line 1")


def parse_binary_instance(raw: bytes, path="<bytes>") -> GameInstance:
    """Parse the ``LQG1`` binary encoding.

        :raises LqGameParseError: On bad magic, truncated data, trailing bytes
            or non-finite entries (location is a byte offset)
    """
    if len(raw) < BINARY_HEADER_SIZE:
        raise LqGameParseError(f"{path}: truncated header", location=f"offset {len(raw)}")
    magic, n, d, p = struct.unpack(BINARY_HEADER_FORMAT, raw[:BINARY_HEADER_SIZE])
    if magic != BINARY_MAGIC:
        raise LqGameParseError(f"{path}: bad magic {magic!r}", location="offset 0")
    if n < 1 or d < 1:
        raise LqGameParseError(f"{path}: shape {n}x{d} must be positive", location="offset 4")
    if not math.isfinite(p):
        raise LqGameParseError(f"{path}: p is not finite", location="offset 12")
    expected = BINARY_HEADER_SIZE + 8 * n * d
    if len(raw) != expected:
        raise LqGameParseError(f"{path}: {n}x{d} needs {expected} bytes, file has {len(raw)}",
                               location=f"offset {min(len(raw), expected)}")
    matrix = np.frombuffer(raw, dtype=BINARY_ENTRY_FORMAT, offset=BINARY_HEADER_SIZE).reshape(n, d)
    bad = np.flatnonzero(~np.isfinite(matrix.ravel()))
    if bad.size:
        offset = BINARY_HEADER_SIZE + 8 * int(bad[0])
        raise LqGameParseError(f"{path}: non-finite entry", location=f"offset {offset}")
    return _wrap_dense(matrix.astype(np.float64), p, path, "offset 20")


def parse_hard_stanza(line: str, path="<string>", number: int = 1) -> HardInstanceSpec:
    """Parse ``hard: case=.. n=.. d=.. l=.. [k=..] p=..``.

        :raises LqGameParseError: On unknown or missing keys, bad values or
            an out-of-range parameter combination
    """
    location = f"line {number}"
    if not line.startswith(HARD_STANZA_PREFIX):
        raise LqGameParseError(f"{path}: stanza must start with {HARD_STANZA_PREFIX!r}", location=location)
    fields = {}
    for token in line[len(HARD_STANZA_PREFIX):].split():
        key, sep, value = token.partition("=")
        if not sep or key not in HARD_STANZA_KEYS:
            raise LqGameParseError(f"{path}: unexpected token {token!r}", location=location)
        if key in fields:
            raise LqGameParseError(f"{path}: duplicate key {key!r}", location=location)
        fields[key] = value
    missing = [key for key in HARD_STANZA_KEYS if key != "k" and key not in fields]
    if missing:
        raise LqGameParseError(f"{path}: missing keys {', '.join(missing)}", location=location)
    try:
        return HardInstanceSpec(
            case=int(fields["case"]),
            n=int(fields["n"]),
            d=int(fields["d"]),
            l=int(fields["l"]),
            k=int(fields["k"]) if "k" in fields else None,
            p=float(fields["p"]),
        )
    except ValueError:
        raise LqGameParseError(f"{path}: non-numeric value in {line!r}", location=location) from None
    except LqGameUsageError as e:
        raise LqGameParseError(f"{path}: {e}", location=location) from e


def detect_format(raw: bytes) -> str:
    if raw.startswith(BINARY_MAGIC):
        return FORMAT_BINARY
    if raw.lstrip().startswith(HARD_STANZA_PREFIX.encode()):
        return FORMAT_HARD
    return FORMAT_CSV


def load_instance(path) -> GameInstance:
    """Load an instance file in any of the supported encodings.

        :param path: File path

        :returns: Dense (CSV, binary) or generator-backed (hard stanza) instance
        :rtype: GameInstance

        :raises LqGameUsageError: If the file does not exist
        :raises LqGameParseError: If the file does not parse
    """
    raw = _read_bytes(path)
    kind = detect_format(raw)
    logger.debug("Loading %s instance from %s", kind, path)
    if kind == FORMAT_BINARY:
        return parse_binary_instance(raw, path)
    text = _read_text(path)
    if kind == FORMAT_HARD:
        number, line = _content_lines(text)[0]
        return build_hard_instance(parse_hard_stanza(line, path, number))
    return parse_csv_instance(text, path)


def load_hard_spec(path) -> HardInstanceSpec:
    """Read the stanza of a hard-instance file."""
    lines = _content_lines(_read_text(path))
    if not lines:
        raise LqGameParseError(f"{path}: empty file", location="line 1")
    number, line = lines[0]
    return parse_hard_stanza(line, path, number)


def encode_binary(matrix, p: float) -> bytes:
    matrix = np.ascontiguousarray(matrix, dtype=BINARY_ENTRY_FORMAT)
    n, d = matrix.shape
    return struct.pack(BINARY_HEADER_FORMAT, BINARY_MAGIC, n, d, float(p)) + matrix.tobytes()


def encode_csv(matrix, p: float) -> str:
    matrix = np.asarray(matrix, dtype=np.float64)
    n, d = matrix.shape
    lines = [f"{n},{d},{float(p)!r}"]
    lines.extend(",".join(repr(float(value)) for value in row) for row in matrix)
    return "\n".join(lines) + "\n"


def save_instance(instance: GameInstance, path, fmt: str = None) -> Path:
    """Write an instance as CSV or binary.

        The matrix is read from storage directly, so the instance counter is
        not charged. Without ``fmt`` the suffix decides: ``.csv``/``.txt``
        give CSV, anything else binary.

        :param instance: Instance to save
        :param path: Destination
        :param fmt: ``"csv"`` or ``"binary"``

        :returns: The written path
        :rtype: pathlib.Path

        :raises LqGameUsageError: On an unknown format
    """
    path = Path(path)
    if fmt is None:
        fmt = FORMAT_CSV if path.suffix.lower() in CSV_SUFFIXES else FORMAT_BINARY
    matrix = instance.storage.dense()
    if fmt == FORMAT_CSV:
        path.write_text(encode_csv(matrix, instance.p))
    elif fmt == FORMAT_BINARY:
        path.write_bytes(encode_binary(matrix, instance.p))
    else:
        raise LqGameUsageError(f"Unknown instance format {fmt!r}")
    logger.info("Saved %dx%d instance to %s (%s)", instance.n, instance.d, path, fmt)
    return path


def save_hard_spec(spec: HardInstanceSpec, path) -> Path:
    path = Path(path)
    path.write_text(spec.to_stanza() + "\n")
    return path


def load_matrix(path) -> np.ndarray:
    """Headerless CSV matrix (vertex and point files).

        :raises LqGameParseError: On ragged rows or bad numbers
    """
    lines = _content_lines(_read_text(path))
    if not lines:
        raise LqGameParseError(f"{path}: empty matrix file", location="line 1")
    rows = []
    width = None
    for number, line in lines:
        values = _parse_floats(line, number, path)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise LqGameParseError(f"{path}: row has {len(values)} entries, expected {width}",
                                   location=f"line {number}")
        rows.append(values)
    return np.array(rows, dtype=np.float64)


def load_vector(path) -> np.ndarray:
    """Vector written on one line or one value per line (target and label files)."""
    lines = _content_lines(_read_text(path))
    if not lines:
        raise LqGameParseError(f"{path}: empty vector file", location="line 1")
    values = []
    for number, line in lines:
        values.extend(_parse_floats(line, number, path))
    return np.array(values, dtype=np.float64)
