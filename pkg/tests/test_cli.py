"""End-to-end tests of the command-line driver."""

import json

from adelic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_split_text(capsys):
    code, out, _ = run(capsys, "split", "x^2-2", "--prime", "7")
    assert code == 0
    assert "(1,1)(1,1) via Kummer" in out
    assert "sum e*f = 2" in out


def test_split_newton_route(capsys):
    code, out, _ = run(capsys, "split", "x^3+x^2-2*x+8", "--prime", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["method"] == "NewtonPolygon"
    assert data["factors"] == [[1, 1], [1, 1], [1, 1]]


def test_split_degree_one(capsys):
    code, out, _ = run(capsys, "split", "x", "--prime", "5")
    assert code == 0 and "(1,1)" in out


def test_split_undetermined_exit_code(capsys):
    code, out, _ = run(capsys, "split", "x^4-4*x^2+36", "--prime", "2")
    assert code == 3


def test_split_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "split", "x^2 - y", "--prime", "7")
    assert code == 2 and "error" in err


def test_split_composite_prime_rejected(capsys):
    code, _, err = run(capsys, "split", "x^2-2", "--prime", "6")
    assert code == 2


def test_field_file_with_label(tmp_path, capsys):
    path = tmp_path / "field.txt"
    path.write_text("# a comment\nlabel: my-field\nx^2 - 2\n")
    code, out, _ = run(capsys, "spectrum", str(path), "--bound", "10")
    assert code == 0
    assert "my-field" in out


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "x^2-2", "--bound", "10", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert {"type": [1, 1], "primes": [7]} in data["entries"]
    assert data["excluded"] == []


def test_invariants_command(capsys):
    code, out, _ = run(capsys, "invariants", "x^3-x-1", "--bound", "100", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["signature"] == [1, 1]
    assert data["detected_degree"] == 3
    assert data["aq_distinguisher"] == []


def test_equiv_json(capsys):
    code, out, _ = run(capsys, "equiv", "x^2-2", "x^2-3", "--bound", "100", "--format", "json")
    assert code == 0  # a NotEquivalent verdict is data, not an error
    data = json.loads(out)
    assert data["kind"] == "NotEquivalent"
    assert data["witness"] == 7
    assert data["type_k"] == [1, 1] and data["type_l"] == [2]


def test_equiv_reflexive(capsys):
    code, out, _ = run(capsys, "equiv", "x^2-2", "x^2-2", "--bound", "100")
    assert code == 0
    assert "EquivalentUpToBound" in out


def test_adele_iso_json(capsys):
    code, out, _ = run(capsys, "adele-iso", "x^2-2", "x^2-3", "--bound", "100", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "NotIsomorphic"
    assert data["witness"] == 7
    assert set(data) >= {"kind", "witness", "matching", "excluded_primes", "bound"}


def test_adele_iso_reflexive(capsys):
    code, out, _ = run(capsys, "adele-iso", "x^2-2", "x^2-2", "--bound", "100")
    assert code == 0
    assert "IsomorphicCertified" in out


def test_fv_eval(tmp_path, capsys):
    fam = tmp_path / "family.json"
    fam.write_text(
        '{"index": ["a", "b", "c"], "stalks": {"a": {"kind": "Zmod", "m": 2}, '
        '"b": {"kind": "Zmod", "m": 3}, "c": {"kind": "Zmod", "m": 5}}}'
    )
    code, out, _ = run(capsys, "fv-eval", "--family", str(fam), "--psi", "v0 = 1", "--theta", "w0 = w0")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(
        capsys,
        "fv-eval",
        "--family",
        str(fam),
        "--psi",
        "not (v0 = 1)",
        "--theta",
        "w0 + w0 = 0",
        "--elements",
        '[{"a": 1, "b": 1, "c": 1}]',
    )
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "fv-eval", "--family", str(fam), "--psi", "v0 = 0", "--theta", "w0 = w0")
    assert code == 0 and out.strip() == "false"


def test_fv_eval_parse_error(tmp_path, capsys):
    fam = tmp_path / "family.json"
    fam.write_text('{"index": ["a"], "stalks": {"a": {"kind": "Zmod", "m": 2}}}')
    code, _, err = run(capsys, "fv-eval", "--family", str(fam), "--psi", "v0 == 1", "--theta", "w0 = w0")
    assert code == 2


def test_corpus_flag_runs(capsys):
    code, out, _ = run(capsys, "--corpus")
    assert code == 0
    assert "all checks passed" in out
    assert "FAIL" not in out


def test_corpus_deterministic(capsys):
    _, out1, _ = run(capsys, "--corpus")
    _, out2, _ = run(capsys, "--corpus")
    assert out1 == out2


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "equiv", "x^2-2", "x^2-3", "--format", "json")
    data = json.loads(out)
    assert json.loads(json.dumps(data, sort_keys=True)) == data
