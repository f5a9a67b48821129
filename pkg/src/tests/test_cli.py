import io
import json

import pytest

from src.cli import EXIT_OK, EXIT_USAGE, run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_mul(capsys):
    code, out, _ = run(capsys, "mul", "--n", "3", "--words", "1", "2", "1")
    assert code == EXIT_OK
    assert out.strip() == "λ^-2 · e1"


def test_mul_json(capsys):
    code, out, _ = run(capsys, "mul", "--n", "3", "--word", "1 2 1", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["n"] == 3
    assert data["terms"][0]["coeff"] == "λ^-2"


def test_trace_at_index_4(capsys):
    code, out, _ = run(capsys, "trace", "--domain", "index=4", "--n", "3", "--word", "1")
    assert code == EXIT_OK
    assert out.strip() == "1/4"


def test_element_from_input_file(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"n": 2, "terms": [{"word": [1]}]}), encoding="utf-8")
    code, out, _ = run(capsys, "expect", "--input", str(path), "--steps", "2")
    assert code == EXIT_OK
    assert out.strip() == "λ^-2"


def test_f_projection(capsys):
    code, out, _ = run(capsys, "f", "--r", "2", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["idempotent"] and data["trace_ok"]


def test_gram_csv(capsys):
    code, out, _ = run(capsys, "gram", "--n", "2", "--domain", "index=2", "--csv")
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 3


def test_insert_requires_a_position(capsys):
    code, _, err = run(capsys, "insert", "--n", "2", "--word", "1")
    assert code == EXIT_USAGE
    assert "--R" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "f-projection", "--max", "2", "--json")
    assert code == EXIT_OK
    certificate = json.loads(out)
    assert certificate["passed"] is True
    assert certificate["suite"] == "f-projection"


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == EXIT_OK
    assert "p-exchange" in out
    assert "run-merge" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "no-such-suite"],
        ["verify"],
        ["mul", "--domain", "index=banana", "--n", "2", "--word", "1"],
        ["mul", "--word", "1"],
        ["mul", "--n", "2", "--word", "one"],
        ["mul", "--n", "2", "--word", "2"],
        ["frobnicate"],
        ["dims", "--json", "--csv"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_dims_csv(capsys):
    code, out, _ = run(capsys, "dims", "--graph", "A4", "--levels", "5", "--csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "r,d_r,beta^r,bound_ok"
    assert lines[4].startswith("3,5,")
    assert lines[5].startswith("4,13,")


def test_dims_embedability(capsys):
    code, out, _ = run(capsys, "dims", "--levels", "6", "--hilbert-dim", "2", "--json")
    assert code == EXIT_OK
    assert "not embedable" in json.loads(out)["embedability"]


def test_growth(capsys):
    code, out, _ = run(capsys, "growth", "--graph", "A3", "--levels", "6", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["estimate"] == pytest.approx(2.0)


def test_bratteli(capsys):
    code, out, _ = run(capsys, "bratteli", "--graph", "A3", "--levels", "2")
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert out.count("rank=same") == 3


def test_spectral_product(capsys, tmp_path):
    def write(name, k):
        path = tmp_path / name
        path.write_text(json.dumps({
            "terms": [{"level": 1, "tl": {"n": 1, "terms": [{"word": []}]}, "vec": [{"idx": [k]}]}]
        }), encoding="utf-8")
        return str(path)

    a, b = write("a.json", 1), write("b.json", 2)
    code, out, _ = run(capsys, "spectral", "mul", "--domain", "index=2", "--input", a, "--input", b, "--json")
    assert code == EXIT_OK
    (term,) = json.loads(out)["terms"]
    assert term["level"] == 2
    assert term["vec"] == [{"idx": [1, 2], "coeff": "1"}]

    code, out, _ = run(capsys, "spectral", "state", "--domain", "index=2", "--input", a)
    assert code == EXIT_OK
    assert out.strip() == "0"

    code, _, _ = run(capsys, "spectral", "mul", "--input", a)
    assert code == EXIT_USAGE


def test_aof_summary(capsys):
    code, out, _ = run(capsys, "aof", "--domain", "index=2", "--levels", "4")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["subfactor_ok"] is True
    assert data["R_u"] == ["1", "0", "0", "1"]
    assert data["invariant_dimensions"]["4"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--lemma", "5.7", "--max", "4", "--domain", "symbolic", "--json"],
        ["verify", "--lemma", "5.6", "--max-level", "4", "--json"],
        ["verify", "--conjugate-eq", "--max-level", "3", "--json"],
    ],
)
def test_verify_shorthands(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    certificate = json.loads(out)
    assert certificate["passed"] is True
    assert certificate["suite"] == {"5.7": "p-exchange", "5.6": "run-merge"}.get(argv[2], "conjugate-equations")
    assert certificate["max"] in (3, 4)


def test_verify_targets_are_exclusive(capsys):
    code, _, _ = run(capsys, "verify", "--lemma", "5.7", "--suite", "relations")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "verify", "--lemma", "4.2")
    assert code == EXIT_USAGE


def test_element_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"n": 3, "terms": [{"word": [1, 2, 1]}]})))
    code, out, _ = run(capsys, "mul")
    assert code == EXIT_OK
    assert out.strip() == "λ^-2 · e1"


def test_insert_reads_stdin(capsys, monkeypatch, tmp_path):
    element = json.dumps({"n": 1, "terms": [{"word": []}]})
    path = tmp_path / "element.json"
    path.write_text(element, encoding="utf-8")
    code, expected, _ = run(capsys, "insert", "--R", "1", "0", "--input", str(path))
    assert code == EXIT_OK

    monkeypatch.setattr("sys.stdin", io.StringIO(element))
    code, out, _ = run(capsys, "insert", "--R", "1", "0")
    assert code == EXIT_OK
    assert out == expected


def test_empty_stdin_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    code, _, err = run(capsys, "trace")
    assert code == EXIT_USAGE
    assert "stdin" in err
