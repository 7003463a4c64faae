"""End-to-end tests for the affine-moduli command line."""
import json

import numpy as np
import pytest

from affine_moduli import main
from config.cli import (
    EXIT_BAD_PARAMS,
    EXIT_DEGENERATE,
    EXIT_NON_FINITE,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_SINGULAR,
    EXIT_UNKNOWN_NAME,
)
from pipeline.documents import read_document


@pytest.fixture
def model3d_doc(tmp_path):
    path = str(tmp_path / "model3d.json")
    assert main(["catalog", "model3d", "--out", path]) == EXIT_OK
    return path


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def test_catalog_to_stdout(capsys):
    assert main(["catalog", "gamma2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["m"] == 2
    assert payload["metadata"] == {"family": "gamma2", "params": []}


def test_catalog_alias_writes_stable_name(capsys):
    assert main(["catalog", "trigonal"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["metadata"]["family"] == "gamma2"


def test_catalog_thm19(capsys):
    assert main(["catalog", "thm19", "--params", "1,2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["m"] == 3
    assert payload["metadata"] == {"family": "thm19", "params": [1.0, 2.0]}


def test_catalog_is_deterministic(capsys):
    main(["catalog", "family1", "--params", "1,0,0,1"])
    first = capsys.readouterr().out
    main(["catalog", "family1", "--params", "1,0,0,1"])
    assert capsys.readouterr().out == first


def test_catalog_bad_params(capsys):
    assert main(["catalog", "family1", "--params", "1,0,0,0"]) == EXIT_BAD_PARAMS
    assert "ad≠0" in capsys.readouterr().err


def test_catalog_unparseable_params():
    assert main(["catalog", "planar-x", "--params", "one"]) == EXIT_BAD_PARAMS


def test_catalog_unknown_family(capsys):
    assert main(["catalog", "gamma3"]) == EXIT_UNKNOWN_NAME
    assert "unknown family" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def test_analyze_model3d(model3d_doc, capsys):
    assert main(["analyze", "--input", model3d_doc]) == EXIT_OK
    out = capsys.readouterr().out
    assert "signature (0,3)" in out
    assert "torsion-free: yes" in out
    assert "stabilizer dim 0" in out


def test_analyze_json(model3d_doc, capsys):
    assert main(["analyze", "--input", model3d_doc, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["signature"]["q"] == 3


def test_analyze_to_file(model3d_doc, tmp_path):
    out = tmp_path / "report.txt"
    assert main(["analyze", "--input", model3d_doc, "--out", str(out)]) == EXIT_OK
    assert "generic: yes" in out.read_text(encoding="utf-8")


def test_analyze_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "m": 2,\n  "coeffs": [1, 2\n', encoding="utf-8")
    assert main(["analyze", "--input", str(bad)]) == EXIT_PARSE_ERROR
    assert "line" in capsys.readouterr().err


def test_analyze_non_finite(tmp_path):
    bad = tmp_path / "nan.json"
    coeffs = ", ".join(["0.0"] * 7 + ["NaN"])
    bad.write_text(f'{{"schema_version": "affine-moduli/1", "m": 2, "coeffs": [{coeffs}]}}', encoding="utf-8")
    assert main(["analyze", "--input", str(bad)]) == EXIT_NON_FINITE


# ---------------------------------------------------------------------------
# act
# ---------------------------------------------------------------------------

def test_act_identity_is_unchanged(model3d_doc, tmp_path):
    out = str(tmp_path / "moved.json")
    assert main(["act", "--input", model3d_doc, "--matrix", "1,0,0;0,1,0;0,0,1", "--out", out]) == EXIT_OK
    np.testing.assert_array_equal(read_document(out).coeffs, read_document(model3d_doc).coeffs)
    assert read_document(out).metadata["transformations"] == [np.eye(3).tolist()]


def test_act_preserves_signature(tmp_path, capsys):
    source = str(tmp_path / "family1.json")
    moved = str(tmp_path / "moved.json")
    main(["catalog", "family1", "--params", "1,1,1,3", "--out", source])
    assert main(["act", "--input", source, "--matrix", "1,0,0;0,1,0;0,0,2", "--out", moved]) == EXIT_OK
    capsys.readouterr()
    main(["analyze", "--input", source])
    before = [line for line in capsys.readouterr().out.splitlines() if line.startswith("signature")]
    main(["analyze", "--input", moved])
    after = [line for line in capsys.readouterr().out.splitlines() if line.startswith("signature")]
    assert before == after


def test_act_matrix_from_file(model3d_doc, tmp_path):
    matrix = tmp_path / "a.json"
    matrix.write_text(json.dumps((2 * np.eye(3)).tolist()), encoding="utf-8")
    out = str(tmp_path / "moved.json")
    assert main(["act", "--input", model3d_doc, "--matrix", str(matrix), "--out", out]) == EXIT_OK
    np.testing.assert_allclose(read_document(out).coeffs, 2 * np.array(read_document(model3d_doc).coeffs))


def test_act_singular(model3d_doc):
    assert main(["act", "--input", model3d_doc, "--matrix", "1,0,0;0,1,0;0,0,0"]) == EXIT_SINGULAR


def test_act_dimension_mismatch(model3d_doc):
    assert main(["act", "--input", model3d_doc, "--matrix", "1,0;0,1"]) == EXIT_PARSE_ERROR


# ---------------------------------------------------------------------------
# stabilizer / torsion-bound
# ---------------------------------------------------------------------------

def test_stabilizer_command(tmp_path, capsys):
    path = str(tmp_path / "family1.json")
    main(["catalog", "family1", "--params", "1,1,1,3", "--out", path])
    assert main(["stabilizer", "--input", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "stabilizer dim 1" in out
    assert "generator 1:" in out


def test_stabilizer_scan(tmp_path, capsys):
    path = str(tmp_path / "gamma2.json")
    main(["catalog", "gamma2", "--out", path])
    assert main(["stabilizer", "--input", path, "--scan", "--restarts", "30"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "finite symmetries found: 3" in out
    assert out.count("order 3:") == 2


def test_stabilizer_scan_degenerate(tmp_path):
    path = str(tmp_path / "family1.json")
    main(["catalog", "family1", "--params", "1,0,0,1", "--out", path])
    assert main(["stabilizer", "--input", path, "--scan", "--restarts", "1"]) == EXIT_DEGENERATE


@pytest.mark.parametrize("ell, bound", [("2", 3), ("3", 7), ("4", 15)])
def test_torsion_bound_chained(ell, bound, capsys):
    assert main(["torsion-bound", "--family", "chained", "--params", ell]) == EXIT_OK
    assert f"torsion bound: {bound}" in capsys.readouterr().out


def test_torsion_bound_from_document(model3d_doc, capsys):
    assert main(["torsion-bound", "--input", model3d_doc]) == EXIT_OK
    assert "torsion bound: 1" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# verify and usage
# ---------------------------------------------------------------------------

def test_verify_catalog(capsys):
    assert main(["verify", "catalog", "--seed", "7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "✗ FAIL" not in out
    assert "checks passed" in out
    assert "closed-form Ricci tensors match the curvature module (Thm 1.12):" in out


def test_verify_unknown_scope():
    assert main(["verify", "nosuch"]) == EXIT_UNKNOWN_NAME


def test_usage_error():
    assert main(["frobnicate"]) == EXIT_PARSE_ERROR


def test_help_exits_cleanly():
    assert main(["--help"]) == EXIT_OK
