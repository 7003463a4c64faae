"""Unit tests for pipeline.documents."""
import io
import json

import numpy as np
import pytest

from catalog.structures import FamilyId, build, describe, random_params
from config.cli import SCHEMA_VERSION
from geometry.errors import DocumentError, NonFiniteError
from pipeline.documents import TensorDocument, emit, parse, read_document, write_document


def _doc(family=FamilyId.MODEL3D, params=()):
    return TensorDocument.from_christoffel(build(family, params), describe(family, params))


# ---------------------------------------------------------------------------
# emit / parse
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("family", list(FamilyId))
def test_round_trip_is_bit_exact(family):
    params = random_params(family, np.random.default_rng(11))
    doc = _doc(family, params)
    back = parse(emit(doc))
    assert back == doc
    assert [c.hex() for c in back.coeffs] == [c.hex() for c in doc.coeffs]


def test_round_trip_awkward_doubles():
    coeffs = [0.1, 1 / 3, -2.0 ** -1074, 1.7976931348623157e308, -0.0, 1e-300, 2.0 / 7.0, 5e-324]
    doc = TensorDocument(m=2, coeffs=coeffs)
    back = parse(emit(doc))
    assert [c.hex() for c in back.coeffs] == [float(c).hex() for c in coeffs]


def test_emit_is_deterministic():
    assert emit(_doc()) == emit(_doc())


def test_emit_layout():
    payload = json.loads(emit(_doc()))
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["m"] == 3
    assert len(payload["coeffs"]) == 27
    assert payload["metadata"] == {"family": "model3d", "params": []}


def test_emit_rejects_nan():
    with pytest.raises(NonFiniteError):
        emit(TensorDocument(m=2, coeffs=[float("nan")] + [0.0] * 7))


def test_to_christoffel():
    gamma = _doc().to_christoffel()
    np.testing.assert_array_equal(gamma.coeffs, build(FamilyId.MODEL3D).coeffs)


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------

def test_parse_syntax_error_has_position():
    with pytest.raises(DocumentError, match=r"line 2 column \d+"):
        parse('{\n  "m": ,\n}')


def test_parse_wrong_length_names_field_and_line():
    text = emit(_doc()).replace('"m": 3', '"m": 2')
    with pytest.raises(DocumentError, match=r"line 4: field 'coeffs'"):
        parse(text)


def test_parse_bad_schema_version():
    text = emit(_doc()).replace(SCHEMA_VERSION, "affine-moduli/0")
    with pytest.raises(DocumentError, match="schema_version"):
        parse(text)


def test_parse_bad_dimension():
    payload = {"schema_version": SCHEMA_VERSION, "m": 1, "coeffs": [0.0]}
    with pytest.raises(DocumentError, match="field 'm'"):
        parse(json.dumps(payload))


def test_parse_non_numeric_entry():
    payload = {"schema_version": SCHEMA_VERSION, "m": 2, "coeffs": [0.0] * 7 + ["x"]}
    with pytest.raises(DocumentError, match="entry 7"):
        parse(json.dumps(payload))


def test_parse_infinity_is_non_finite():
    text = json.dumps({"schema_version": SCHEMA_VERSION, "m": 2, "coeffs": [0.0] * 7 + [1.0]})
    text = text.replace("1.0]", "Infinity]")
    with pytest.raises(NonFiniteError):
        parse(text)


def test_parse_not_an_object():
    with pytest.raises(DocumentError, match="JSON object"):
        parse("[1, 2]")


def test_metadata_defaults_to_empty():
    text = json.dumps({"schema_version": SCHEMA_VERSION, "m": 2, "coeffs": [0.0] * 8})
    assert parse(text).metadata == {}


# ---------------------------------------------------------------------------
# Files and streams
# ---------------------------------------------------------------------------

def test_write_and_read_file(tmp_path):
    path = str(tmp_path / "model3d.json")
    write_document(_doc(), path)
    assert read_document(path) == _doc()


def test_read_missing_file(tmp_path):
    with pytest.raises(DocumentError, match="cannot read"):
        read_document(str(tmp_path / "missing.json"))


def test_stdout_and_stdin(capsys, monkeypatch):
    write_document(_doc(), "-")
    text = capsys.readouterr().out
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert read_document("-") == _doc()
