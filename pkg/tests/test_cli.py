import json

import pytest

from ncfactor import cli
from ncfactor import factorizer as FZ
from ncfactor.parsing import parse_poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank_text(capsys):
    code, out, _ = run(capsys, "rank", "x - x*y*x")
    assert code == 0
    assert "rank:  4" in out


def test_rank_json_with_oracle(capsys):
    code, out, _ = run(capsys, "rank", "--format", "json", "--oracle-check", "5")
    assert code == 0
    data = json.loads(out)
    assert data == {
        "command": "rank",
        "input": "5",
        "rank": 1,
        "hankel_rank": 1,
        "oracle_check": True,
    }


def test_rank_section5(capsys):
    code, out, _ = run(capsys, "rank", "x*y*x*y*x - 4*x*y*x + 3*x")
    assert code == 0
    assert "rank:  6" in out


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "rank", "x + ")
    assert code == 1
    assert "parse error" in err


def test_hankel_command(capsys):
    code, out, _ = run(capsys, "hankel", "x - x*y*x")
    assert code == 0
    assert "rank: 4" in out
    code, out, _ = run(capsys, "hankel", "--format", "json", "x - x*y*x")
    data = json.loads(out)
    assert data["rank"] == 4
    assert data["rows"] == ["1", "x", "x*y", "x*y*x"]
    assert data["cols"] == ["1", "x", "y*x", "x*y*x"]


def test_factor_text_output(capsys):
    code, out, _ = run(capsys, "factor", "x*y*x*y*x - 4*x*y*x + 3*x")
    assert code == 0
    assert "VERIFIED product = input" in out
    assert out.count("rank 3") == 2


def test_factor_closure_caveat(capsys):
    code, out, _ = run(capsys, "factor", "x^2 - 2")
    assert code == 0
    assert "splits-over-closure" in out
    code, out, _ = run(capsys, "factor", "x*y - 2")
    assert code == 0
    assert "splits-over-closure" not in out


def test_factor_json_schema(capsys):
    code, out, _ = run(capsys, "factor", "--format", "json", "3*x - 4*x*y*x")
    data = json.loads(out)
    assert data["command"] == "factor"
    assert data["product_check"] is True
    assert len(data["atoms"]) == 2
    for atom in data["atoms"]:
        assert set(atom) == {"poly", "rank", "status", "als"}
    # text and JSON renderings expose the same mathematical content
    _, text, _ = run(capsys, "factor", "3*x - 4*x*y*x")
    for atom in data["atoms"]:
        assert atom["poly"] in text


def test_factor_enumerate(capsys):
    code, out, _ = run(
        capsys, "factor", "--format", "json", "--enumerate-factorizations",
        "x*y*x*y*x - 4*x*y*x + 3*x",
    )
    data = json.loads(out)
    assert data["factorizations"]
    for item in data["factorizations"]:
        assert len(item["atoms"]) == 3


def test_minimize_expression(capsys):
    code, out, _ = run(capsys, "minimize", "3*x - 4*x*y*x")
    assert code == 0
    assert "minimal dim: 4" in out


def test_minimize_als_file_and_output(tmp_path, capsys):
    import paper_systems as ps

    src = tmp_path / "min0.json"
    src.write_text(ps.min0().to_json())
    dst = tmp_path / "out.json"
    code, out, _ = run(
        capsys, "minimize", "--alphabet", "x,y,z",
        "--als-file", str(src), "--output", str(dst),
    )
    assert code == 0
    assert "minimal dim: 2" in out
    assert "polynomial: z" in out
    stored = json.loads(dst.read_text())
    assert stored["dim"] == 2


def test_minimize_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"alphabet": ["x"], "dim": 2, "matrices": [], "u": [], "v": []}))
    code, out, err = run(capsys, "minimize", "--als-file", str(bad))
    assert code == 1
    assert "error" in err


def test_minimize_trace_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NCFACTOR_TRACE", "1")
    code, out, _ = run(capsys, "minimize", "3*x - 4*x*y*x")
    assert "trace:" in out


def test_als_command_round_trip(tmp_path, capsys):
    dst = tmp_path / "als.json"
    code, out, _ = run(capsys, "als", "x - x*y*x", "--output", str(dst))
    assert code == 0
    assert "dim: 4" in out
    from ncfactor.als import Als

    stored = Als.from_json(dst.read_text())
    assert stored.n == 4


def test_verify_pass_and_fail(tmp_path, capsys):
    cert = FZ.factor(parse_poly("x*y*x*y*x - 4*x*y*x + 3*x"))
    good = tmp_path / "cert.json"
    good.write_text(cert.to_json())
    code, out, _ = run(capsys, "verify", str(good))
    assert code == 0
    assert "PASS" in out

    data = cert.to_dict()
    data["atoms"][0]["als"]["matrices"][0][0][0] = "2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1
    assert "FAIL" in out
    assert "problem" in out


def test_verify_empty_atoms_fails(tmp_path, capsys):
    cert = FZ.factor(parse_poly("x*y - 2"))
    data = cert.to_dict()
    data["atoms"] = []
    path = tmp_path / "empty.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    assert "empty atom list" in out


def test_deterministic_output(capsys):
    code1, out1, _ = run(capsys, "factor", "--format", "json", "x - x*y*x")
    code2, out2, _ = run(capsys, "factor", "--format", "json", "x - x*y*x")
    assert (code1, out1) == (code2, out2)


def test_custom_alphabet(capsys):
    code, out, _ = run(capsys, "rank", "--alphabet", "u,v", "u*v - 2")
    assert code == 0
    assert "rank:  3" in out
