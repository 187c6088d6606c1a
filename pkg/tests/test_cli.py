"""Tests for the command-line interface: parsing, formatting, and exit codes."""

import json
import math

import numpy as np
import pytest

from structexp.cli import (
    MatrixDocument,
    ParseError,
    format_document_json,
    format_matrix,
    load_document,
    parse_document,
    run,
)
from structexp.hxh import J4, R4
from structexp import expm_series

from conftest import sample_family


def _text(m) -> str:
    return "\n".join(" ".join(repr(float(v)) for v in row) for row in np.asarray(m))


J4_TEXT = _text(J4)
R4_TEXT = _text(R4)


# ---------------------------------------------------------------------- parsing


def test_parse_plain_real_with_comments():
    doc = parse_document("# a quarter turn\n0 1  # top row\n-1 0\n")
    assert doc.n == 2
    assert doc.kind == "real"
    assert doc.entries == (0.0, 1.0, -1.0, 0.0)
    assert not np.iscomplexobj(doc.matrix())


def test_parse_plain_complex_token():
    doc = parse_document("complex  0 0  1 0  -1 0  0 0")
    assert doc.n == 2
    assert doc.kind == "complex"
    m = doc.matrix()
    assert np.iscomplexobj(m)
    assert np.array_equal(m, np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex))


def test_parse_plain_rejects_bad_token():
    with pytest.raises(ParseError, match="banana"):
        parse_document("0 1 banana 0")


def test_parse_plain_rejects_bad_count():
    with pytest.raises(ParseError, match="scalars"):
        parse_document("1 2 3 4 5")


def test_parse_empty():
    with pytest.raises(ParseError):
        parse_document("")
    with pytest.raises(ParseError):
        parse_document("   \n  ")


def test_parse_json_round_trip():
    doc = MatrixDocument.of_matrix(np.eye(3), label="id3")
    again = parse_document(format_document_json(doc))
    assert again == doc


def test_parse_json_extra_keys_ignored():
    doc = MatrixDocument.of_matrix(np.eye(2))
    text = format_document_json(doc, route="oracle")
    assert parse_document(text).entries == doc.entries


def test_parse_json_rejects_malformed():
    with pytest.raises(ParseError):
        parse_document("{not json")
    with pytest.raises(ParseError):
        parse_document(json.dumps([1, 2, 3]))
    with pytest.raises(ParseError):
        parse_document(json.dumps({"n": 2, "kind": "real"}))
    with pytest.raises(ParseError):
        parse_document(json.dumps({"n": 5, "kind": "real", "entries": [0.0] * 25}))
    with pytest.raises(ParseError):
        parse_document(json.dumps({"n": 2, "kind": "octonion", "entries": [0.0] * 4}))
    with pytest.raises(ParseError):
        parse_document(json.dumps({"n": 2, "kind": "real", "entries": [0.0] * 4,
                                   "label": 7}))


def test_matrix_document_complex_round_trip():
    rng = np.random.default_rng(91)
    m = rng.uniform(-2, 2, (4, 4)) + 1j * rng.uniform(-2, 2, (4, 4))
    doc = MatrixDocument.of_matrix(m)
    assert doc.kind == "complex"
    assert np.array_equal(doc.matrix(), m)


def test_load_document_file_then_inline(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("0 1\n-1 0\n")
    assert load_document(str(p)).entries == (0.0, 1.0, -1.0, 0.0)
    assert load_document("0 1 -1 0").entries == (0.0, 1.0, -1.0, 0.0)


def test_format_matrix_alignment():
    out = format_matrix(np.array([[1.0, -2.5], [0.125, 100.0]]))
    lines = out.splitlines()
    assert len(lines) == 2
    assert len(lines[0]) == len(lines[1])
    assert "-2.5" in lines[0]


# ------------------------------------------------------------------ subcommands


def test_rep_prints_all_sixteen(capsys):
    assert run(["rep", R4_TEXT]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 16
    assert lines[0] == "1⊗1: 0"
    assert "j⊗i: 1" in lines


def test_rep_needs_4x4(capsys):
    assert run(["rep", "0 1 -1 0"]) == 2
    assert "4x4" in capsys.readouterr().err


def test_classify_lists_matches(capsys):
    assert run(["classify", J4_TEXT]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("SkewSymmetric:")


def test_classify_dense_no_match(capsys):
    rng = np.random.default_rng(92)
    assert run(["classify", _text(rng.uniform(-1, 1, (4, 4)))]) == 0
    assert "no structured family matched" in capsys.readouterr().out


def test_classify_rejects_small(capsys):
    assert run(["classify", "0 1 -1 0"]) == 2


def test_expm_zero_routes_to_skew_symmetric(capsys):
    assert run(["expm", _text(np.zeros((4, 4)))]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "route: SkewSymmetric"


def test_expm_json_output_parses_back(capsys):
    assert run(["expm", J4_TEXT, "--json"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out)
    assert payload["route"] == "SkewSymmetric"
    value = parse_document(out).matrix()
    want = math.cos(1.0) * np.eye(4) + math.sin(1.0) * J4
    assert np.linalg.norm(value - want) < 1e-13


def test_expm_2x2_uses_closed_form(capsys):
    assert run(["expm", "0 1 -1 0"]) == 0
    out = capsys.readouterr().out
    assert "route: expm2" in out
    assert f"{math.cos(1.0):.6g}" in out


def test_expm_3x3_picks_a_covering(capsys):
    assert run(["expm", "0 -1 0  1 0 0  0 0 0"]) == 0
    assert "route: covering:so3" in capsys.readouterr().out


def test_expm_3x3_dense_falls_back_to_oracle(capsys):
    rng = np.random.default_rng(93)
    assert run(["expm", _text(rng.uniform(-1, 1, (3, 3)))]) == 0
    assert "route: oracle" in capsys.readouterr().out


def test_expm_forced_covering(capsys):
    assert run(["expm", J4_TEXT, "--method", "covering:so4"]) == 0
    assert "route: covering:so4" in capsys.readouterr().out


def test_expm_forced_covering_rejects_non_member(capsys):
    i22 = _text(np.diag([1.0, 1.0, -1.0, -1.0]))
    assert run(["expm", i22, "--method", "covering:so4"]) == 3
    assert "so4" in capsys.readouterr().err


def test_expm_forced_class_mismatch(capsys):
    assert run(["expm", J4_TEXT, "--method", "SymToeplitzTridiag"]) == 3
    assert "SymToeplitzTridiag" in capsys.readouterr().err


def test_expm_unknown_method(capsys):
    assert run(["expm", J4_TEXT, "--method", "Bogus"]) == 2
    assert run(["expm", J4_TEXT, "--method", "covering:nope"]) == 2


def test_expm_class_method_needs_4x4(capsys):
    assert run(["expm", "0 1 -1 0", "--method", "SkewSymmetric"]) == 2


def test_verify_skew_symmetric(capsys):
    assert run(["verify", J4_TEXT]) == 0
    out = capsys.readouterr().out
    assert "SkewSymmetric" in out
    assert "oracle" in out
    assert "reference" in out


def test_verify_all_routes_adds_coverings(capsys):
    assert run(["verify", J4_TEXT, "--all-routes"]) == 0
    assert "covering:so4" in capsys.readouterr().out


def test_verify_inject_fault_fails(capsys):
    assert run(["verify", J4_TEXT, "--inject-fault", "1e-6"]) == 1
    captured = capsys.readouterr()
    assert "residual above" in captured.err


def test_verify_dense_has_only_the_reference(capsys):
    rng = np.random.default_rng(94)
    assert run(["verify", _text(rng.uniform(-1, 1, (4, 4)))]) == 0
    out = capsys.readouterr().out
    assert "reference" in out


def test_verify_2x2_and_3x3(capsys):
    assert run(["verify", "0 1 -1 0"]) == 0
    assert "expm2" in capsys.readouterr().out
    assert run(["verify", "0 -1 0  1 0 0  0 0 0", "--all-routes"]) == 0
    assert "covering:so3" in capsys.readouterr().out


def test_verify_complex_family(capsys):
    rng = np.random.default_rng(95)
    doc = MatrixDocument.of_matrix(sample_family("ComplexSO4", rng))
    assert run(["verify", format_document_json(doc), "--all-routes"]) == 0
    assert "ComplexSO4" in capsys.readouterr().out


def test_bad_file_contents(tmp_path, capsys):
    p = tmp_path / "short.txt"
    p.write_text("1 2 3\n")
    assert run(["verify", str(p)]) == 2
    p2 = tmp_path / "bad.json"
    p2.write_text("{\"n\": 2}")
    assert run(["classify", str(p2)]) == 2
