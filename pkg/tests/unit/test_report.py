"""Tests for JSON report emission.

This module tests:
- Conversion of numpy values into JSON-ready values
- Fixed top-level key order
- Sidecar files for long vectors
"""

import io
import json
from pathlib import Path

import numpy as np

from lqgame.constants.formats import INLINE_VECTOR_MAX, REPORT_VERSION
from lqgame.harness.report import build_report, emit_report, jsonable, load_report, load_sidecar


class TestJsonable:
    """Test value conversion."""

    def test_numpy_values(self):
        """Test numpy scalars, arrays, booleans and paths."""
        converted = jsonable({
            'a': np.float64(0.5),
            'b': np.int64(3),
            'c': np.array([1.0, 2.0]),
            'd': np.bool_(True),
            'e': (1, 2),
            'f': Path("x/y.csv"),
        })
        assert converted == {'a': 0.5, 'b': 3, 'c': [1.0, 2.0], 'd': True, 'e': [1, 2], 'f': "x/y.csv"}
        assert type(converted['b']) is int
        assert type(converted['d']) is bool

    def test_non_finite(self):
        """Test that NaN and infinities become None."""
        assert jsonable([float("nan"), np.inf, -np.inf]) == [None, None, None]


class TestBuildReport:
    """Test document layout."""

    def test_key_order(self):
        """Test version, mode, params, records, then sections; None sections dropped."""
        document = build_report("solve", {'q': 2.0}, [{'seed': 0}], certificate=None, summary={'runs': 1})
        assert list(document) == ['version', 'mode', 'params', 'records', 'summary']
        assert document['version'] == REPORT_VERSION


class TestEmitReport:
    """Test writing reports."""

    def test_stream(self):
        """Test that reports without a path go to the stream."""
        stream = io.StringIO()
        text = emit_report(build_report("oracle", {}, []), stream=stream)
        assert stream.getvalue() == text
        assert json.loads(text)['mode'] == "oracle"

    def test_floats_round_trip(self, tmp_path):
        """Test that floats read back bit-exactly."""
        value = 0.1 + 0.2
        path = tmp_path / "report.json"
        emit_report(build_report("solve", {}, [{'achieved_value': value}]), path)
        assert load_report(path)['records'][0]['achieved_value'] == value

    def test_floats_match_17_digit_rendering(self, tmp_path):
        """Test that written floats equal their %.17g rendering bit for bit, at most 17 digits."""
        generator = np.random.default_rng(4)
        values = np.concatenate([generator.normal(size=200) * 10.0 ** generator.integers(-300, 300, 200),
                                 [np.nextafter(1.0, 2.0), 5e-324, 1.7976931348623157e308]]).tolist()
        path = tmp_path / "report.json"
        text = emit_report(build_report("solve", {}, [{'values': values}]), path)
        loaded = load_report(path)['records'][0]['values']
        assert loaded == [float("%.17g" % value) for value in values]
        for token in json.loads(text)['records'][0]['values']:
            mantissa = repr(token).split("e")[0].lstrip("-").replace(".", "").lstrip("0")
            assert len(mantissa) <= 17

    def test_long_vector_goes_to_sidecar(self, tmp_path):
        """Test that vectors above the inline limit are written beside the report."""
        vector = np.linspace(0.0, 1.0, INLINE_VECTOR_MAX + 1)
        path = tmp_path / "run.json"
        emit_report(build_report("solve", {}, [{'x_bar': vector.tolist()}]), path)
        reference = load_report(path)['records'][0]['x_bar']
        assert reference['length'] == INLINE_VECTOR_MAX + 1
        assert (tmp_path / reference['path']).exists()
        np.testing.assert_array_equal(load_sidecar(path, reference), vector)

    def test_short_vector_stays_inline(self, tmp_path):
        """Test that short vectors are kept in the record."""
        path = tmp_path / "run.json"
        emit_report(build_report("solve", {}, [{'x_bar': [0.5, 0.5]}]), path)
        assert load_report(path)['records'][0]['x_bar'] == [0.5, 0.5]
        assert sorted(p.name for p in tmp_path.iterdir()) == ["run.json"]
