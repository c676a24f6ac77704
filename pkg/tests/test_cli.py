from __future__ import annotations

import json

import pytest

from griesmer_lab.cli import EXIT_CAP, EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_table_row(capsys):
    code, out, _ = run(capsys, "construct", "--family", "1", "--q", "2", "--k", "5", "--u", "2", "--h", "3", "--analyze", "wd,optimality", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["parameters"] == {"q": 2, "n": 22, "k": 5, "d": 10}
    assert data["optimality"]["griesmer_defect"] == 1 and data["optimality"]["verdict"] == "DistanceOptimal"


def test_construct_family2_example(capsys):
    code, out, _ = run(capsys, "construct", "--family", "2", "--q", "2", "--k", "6", "--u0", "2", "--u", "4,4", "--analyze", "wd,ghw,sswd", "--workers", "1")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["weight_distribution"] == [[0, 1], [16, 9], [18, 48], [24, 6]]
    assert all(a["status"] in ("Match", "NotApplicable") for a in data["agreement"].values())


def test_construct_to_file_and_csv(tmp_path, capsys):
    path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "construct", "--family", "1-pencil", "--q", "2", "--k", "8", "--u", "2", "--format", "csv", "--output", str(path))
    assert code == EXIT_OK and out == ""
    assert "120,81" in path.read_text()


def test_user_subspaces(tmp_path, capsys):
    path = tmp_path / "subs.txt"
    path.write_text("1,0,0,0,0\n0,1,0,0,0\n\n0,0,1,0,0\n0,0,0,1,0\n\n1,0,1,0,1\n0,1,0,1,1\n")
    code, out, _ = run(capsys, "construct", "--family", "1", "--q", "2", "--k", "5", "--u", "2", "--h", "3", "--subspaces", str(path))
    assert code == EXIT_OK and json.loads(out)["parameters"] == {"q": 2, "n": 22, "k": 5, "d": 10}


def test_invalid_parameters(capsys):
    code, _, err = run(capsys, "construct", "--family", "1", "--q", "2", "--k", "5", "--u", "1", "--h", "2")
    assert code == EXIT_INVALID and "u" in err
    code, _, err = run(capsys, "construct", "--family", "1", "--q", "6", "--k", "5", "--u", "2", "--h", "2")
    assert code == EXIT_INVALID and "error" in err
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--q", "2"])
    assert exc.value.code == EXIT_INVALID


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "construct", "--family", "1-pencil", "--q", "2", "--k", "8", "--u", "2", "--max-qk", "64")
    assert code == EXIT_CAP and "exceeds the cap" in err


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "243")
    assert code == EXIT_OK and "3/3 rows pass" in out
    code, out, _ = run(capsys, "reproduce", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[0] == "row,expected,obtained,status,seconds"
    assert out.count("PASS") == 17
    code, _, _ = run(capsys, "reproduce", "--only", "no-such-row")
    assert code == EXIT_INVALID


def test_oracle(capsys):
    args = ["oracle", "--form", "inside-common-sum", "--q", "2", "--u0", "1", "--u1", "2", "--u2", "2", "--v0", "0", "--v1", "1", "--v2", "1", "--t", "1"]
    code, out, _ = run(capsys, *args)
    assert code == EXIT_OK and "verdict:     Match" in out
    code, out, _ = run(capsys, "oracle", "--form", "meeting-common-pair", "--sweep", "--kmax", "4")
    assert code == EXIT_OK and "confirmed" in out and "refuted" in out


def test_oracle_degenerate(capsys):
    code, out, _ = run(capsys, "oracle", "--form", "meeting-subspace", "--q", "2", "--k", "3", "--u1", "0", "--l", "0", "--t", "0")
    assert code == EXIT_OK and "closed form: 1" in out and "oracle:      1" in out


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "22", "--k", "5", "--d", "10", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["certificate"]["griesmer_defect"] == 1
    assert data["cm"]["bound_upper"] >= 5
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "22", "--k", "5", "--d", "10")
    assert "Griesmer defect" in out


def test_parse_range():
    assert parse_range("1-3,5") == [1, 2, 3, 5]
    assert parse_range(None) is None


def test_mismatch_exit_code_is_distinct():
    assert len({EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_MISMATCH}) == 4
