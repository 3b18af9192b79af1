import json
import numpy as np
from fractions import Fraction
from numpy.testing import assert_array_equal

import suphase
from suphase.report import (INLINE_LIMIT, MatrixSink, ReportEnvelope, decode_matrix, encode_complex,
                            encode_fraction, encode_matrix, rows_to_csv)


def test_envelope_json():
    envelope = ReportEnvelope(command="basis", parameters={"n": 3, "lambda": 1}, results={"dimension": 3},
                              timestamp="2020-01-01T00:00:00+00:00")
    doc = json.loads(envelope.to_json())
    assert doc["version"] == suphase.__version__
    assert doc["command"] == "basis"
    assert doc["residuals"] == {}
    assert list(doc) == sorted(doc)


def test_matrix_survives_json():
    rng = np.random.RandomState(0)
    matrix = rng.randn(4, 4) + 1j * rng.randn(4, 4)
    restored = decode_matrix(json.loads(json.dumps(encode_matrix(matrix))))
    assert_array_equal(restored, matrix)


def test_encode_complex():
    assert encode_complex(1 - 2j) == [1.0, -2.0]


def test_encode_fraction():
    assert encode_fraction(Fraction(5, 3)) == {"exact": "5/3", "value": 5 / 3}
    assert encode_fraction(None) is None


def test_small_matrix_inline(tmp_path):
    sink = MatrixSink(tmp_path / "report.json", "phases")
    assert sink.put("E", np.eye(2)) == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
    assert sink.written == []


def test_large_matrix_to_file(tmp_path):
    sink = MatrixSink(tmp_path / "report.json", "phases")
    matrix = np.eye(INLINE_LIMIT + 1)
    ref = sink.put("E", matrix)
    assert ref == {"file": "report_E.npy", "dimension": INLINE_LIMIT + 1}
    assert_array_equal(np.load(tmp_path / "report_E.npy"), matrix)


def test_rows_to_csv():
    text = rows_to_csv(["lambda", "value", "formula"],
                       [{"lambda": 1, "value": 0.1, "formula": {"exact": "2/1", "value": 2.0}},
                        {"lambda": 2, "value": 2.0, "formula": None}],
                       trailer={"decay_exponent": -1.0})
    assert text.splitlines() == ["lambda,value,formula", "1,0.1,2.0", "2,2.0,", "# decay_exponent,-1.0"]
