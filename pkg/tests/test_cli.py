import hashlib
import json

import pytest

from sumrank.cli import main, parse_message


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(text):
    rows = dict(line.split(None, 1) for line in text.strip().splitlines())
    return {k: v.strip() for k, v in rows.items()}


@pytest.fixture
def p1_file(tmp_path, capsys):
    path = tmp_path / "p1.json"
    assert run(capsys, "construct", "--curve", "p1", "--p", "3", "--e", "1", "--r", "2", "--m", "1", "--out", str(path))[0] == 0
    return path


def test_construct_p1(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "--curve", "p1", "--p", "3", "--e", "1", "--r", "2", "--m", "1",
                       "--out", str(tmp_path / "a.json"))
    rep = report(out)
    assert code == 0
    assert rep["kappa_l"] == "2" and rep["d_lower"] == "3" and rep["singleton_gap"] == "0"
    doc = json.loads((tmp_path / "a.json").read_text())
    assert doc["version"] == 1 and list(doc)[0] == "version"


def test_construct_hermitian(capsys):
    code, out, _ = run(capsys, "construct", "--curve", "hermitian", "--p", "2", "--e", "2", "--q0", "2", "--r", "2",
                       "--m", "3")
    rep = report(out)
    # the searched x has three rational zeros, leaving five evaluation places
    assert code == 0
    assert rep["kappa_l"] == "2" and rep["n_l"] == "10" and rep["d_lower"] == "7"


def test_construct_exit_codes(capsys):
    assert run(capsys, "construct", "--curve", "p1", "--p", "3", "--r", "2", "--m", "100")[0] == 3
    assert run(capsys, "construct", "--curve", "p1", "--p", "4", "--r", "2", "--m", "1")[0] == 2
    assert run(capsys, "construct", "--curve", "hermitian", "--p", "2", "--e", "2", "--r", "2", "--m", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--curve", "elliptic", "--p", "3", "--r", "2", "--m", "1"])
    assert exc.value.code == 2


def test_construct_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "x.json", tmp_path / "y.json"]
    for p in paths:
        run(capsys, "construct", "--curve", "hermitian", "--p", "2", "--e", "2", "--q0", "2", "--r", "3", "--m", "4",
            "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_encode(p1_file, capsys):
    code, out, _ = run(capsys, "encode", "--code", str(p1_file), "--message", "0,0")
    assert code == 0 and json.loads(out) == {"blocks": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}
    doc = json.loads(p1_file.read_text())
    code, out, _ = run(capsys, "encode", "--code", str(p1_file), "--message", "0x1,0")
    assert json.loads(out)["blocks"] == doc["generators"][0]


def test_encode_errors(p1_file, capsys):
    assert run(capsys, "encode", "--code", str(p1_file), "--message", "1")[0] == 4
    assert run(capsys, "encode", "--code", str(p1_file), "--message", "1,zz")[0] == 2
    assert run(capsys, "encode", "--code", str(p1_file), "--message", "1,99")[0] == 2


def test_parse_message():
    assert parse_message("1, 0x0a,3") == [1, 10, 3]
    assert parse_message("") == []


def test_mindist(p1_file, capsys):
    code, out, _ = run(capsys, "mindist", "--code", str(p1_file))
    assert code == 0 and out.split()[:2] == ["d_exact", "3"]
    assert run(capsys, "mindist", "--code", str(p1_file), "--cap", "2")[0] == 5
    assert run(capsys, "mindist", "--code", str(p1_file), "--jobs", "2")[0] == 0


def test_mindist_m0(tmp_path, capsys):
    path = tmp_path / "m0.json"
    run(capsys, "construct", "--curve", "p1", "--p", "3", "--r", "2", "--m", "0", "--out", str(path))
    code, out, _ = run(capsys, "mindist", "--code", str(path))
    assert out.split()[1] == "4"


def test_mindist_corrupted(p1_file, capsys):
    doc = json.loads(p1_file.read_text())
    doc["generators"][1][0][0][0] = (doc["generators"][1][0][0][0] + 1) % 3
    p1_file.write_text(json.dumps(doc))
    assert run(capsys, "mindist", "--code", str(p1_file))[0] != 0
    p1_file.write_text("garbage")
    assert run(capsys, "mindist", "--code", str(p1_file))[0] == 2


def test_bounds_values(capsys):
    assert run(capsys, "bounds", "--q", "121", "--r", "2", "--mode", "compgv", "--delta", "0")[1] == "0.850000\n"
    assert run(capsys, "bounds", "--q", "121", "--r-inf", "--mode", "compgv", "--delta", "0")[1] == "0.800000\n"
    assert run(capsys, "bounds", "--q", "121", "--r", "inf", "--mode", "asymptotic", "--delta", "0.5")[1] == "0.250000\n"
    code, out, _ = run(capsys, "bounds", "--q", "49", "--r", "1", "--s", "10000", "--mode", "finite", "--delta", "0.3")
    assert code == 0 and abs(float(out) - 0.304248) < 1e-6


def test_bounds_errors(capsys):
    assert run(capsys, "bounds", "--q", "48", "--mode", "compgv", "--delta", "0")[0] == 2
    assert run(capsys, "bounds", "--q", "49", "--mode", "compgv")[0] == 2
    assert run(capsys, "bounds", "--q", "49", "--mode", "finite", "--delta", "0.3")[0] == 2
    assert run(capsys, "bounds", "--q", "1", "--mode", "table")[0] == 2


def test_bounds_table_deterministic(tmp_path, capsys):
    digests = []
    for name in ("a.csv", "b.csv"):
        p = tmp_path / name
        assert run(capsys, "bounds", "--q", "121", "--r", "2", "--mode", "table", "--out", str(p))[0] == 0
        digests.append(hashlib.sha256(p.read_bytes()).hexdigest())
    assert digests[0] == digests[1]
    lines = (tmp_path / "a.csv").read_text().splitlines()
    assert lines[0] == "delta,gv_asymptotic,compgv" and lines[1].endswith(",0.850000")


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "passed" in out and "ore" not in out
    code, out, _ = run(capsys, "selftest", "--verbose")
    assert code == 0
    for name in ("gf", "ore", "laurent", "curve", "code", "bounds"):
        assert name in out
