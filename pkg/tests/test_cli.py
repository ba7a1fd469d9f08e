import json

import pytest

from cayleysum.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture()
def p4_file(tmp_path):
    f = tmp_path / "p4.txt"
    f.write_text("4\n0 1\n1 2\n2 3\n")
    return str(f)


def test_classify_cli(capsys, p4_file):
    code, data = _run(capsys, "classify", "--tree", p4_file, "--group", "Z2^2")
    assert code == 1 and data["obstructed"]
    code, data = _run(capsys, "classify", "--tree", p4_file, "--group", "Z4")
    assert code == 0 and not data["obstructed"]


def test_solve_cli(capsys, p4_file):
    code, data = _run(capsys, "solve", "--tree", p4_file, "--group", "Z4")
    assert code == 0
    assert data["witness"]["group"] == "Z4"
    code, data = _run(
        capsys, "solve", "--tree", p4_file, "--group", "Z2^2",
        "--colors", "all-minus-zero", "--count",
    )
    assert code == 1 and data["count"] == 0
    code, data = _run(
        capsys, "solve", "--tree", p4_file, "--group", "Z4", "--node-limit", "1"
    )
    assert code == 2 and data["inconclusive"]


def test_solve_cli_prufer(capsys):
    code, data = _run(capsys, "solve", "--prufer", "1,1", "--group", "Z2^2",
                      "--colors", "all-minus-zero")
    assert code == 0  # star K1,3 embeds


def test_solve_cli_explicit_colors(capsys, p4_file):
    code, data = _run(capsys, "solve", "--tree", p4_file, "--group", "Z4",
                      "--colors", "0,1,2")
    assert code == 0


def test_solve_cli_symmetry(capsys, p4_file):
    code, data = _run(capsys, "solve", "--tree", p4_file, "--group", "Z4",
                      "--symmetry", "--count")
    assert code == 0 and data["count"] == 8


def test_harmonious_cli_explicit_leaf(capsys, tmp_path):
    f = tmp_path / "p5.txt"
    f.write_text("5\n0 1\n1 2\n2 3\n3 4\n")
    code, data = _run(capsys, "harmonious", "--tree", str(f), "--leaf", "4")
    assert code == 0
    labels = dict(map(tuple, data["labels"]))
    assert set(labels) == set(range(5))


def test_core_embed_cli(capsys, p4_file, tmp_path):
    f = tmp_path / "p30.txt"
    f.write_text("30\n" + "\n".join(f"{i} {i + 1}" for i in range(29)) + "\n")
    code, data = _run(capsys, "core-embed", "--tree", str(f), "--group", "Z30")
    assert code == 0 and data["method"] == "pipeline"
    assert "c_special" in data and "phi" in data


def test_partition_cli(capsys):
    code, data = _run(
        capsys, "partition-zero-sum", "--group", "Z7",
        "--set", "0,1,2,3,4,5,6", "--sizes", "3,4",
    )
    assert code == 0
    assert [len(p) for p in data["parts"]] == [3, 4]


def test_odc_cli(capsys):
    code, data = _run(capsys, "odc", "--prufer", "0,0", "--group", "Z2^2")
    assert code == 0 and data["verification"]["verdict"]
    # P4 over Z2^2 has no rainbow embedding
    code, data = _run(capsys, "odc", "--prufer", "1,2", "--group", "Z2^2")
    assert code == 1 and "error" in data


def test_grid_cli(capsys, tmp_path):
    out = tmp_path / "grid.csv"
    code, data = _run(capsys, "grid", "--nmax", "4", "--dmax", "3", "--out", str(out))
    assert code == 0 and data["hard_violations"] == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 8  # header + 7 rows


def test_harmonious_cli(capsys, tmp_path):
    f = tmp_path / "p5.txt"
    f.write_text("5\n0 1\n1 2\n2 3\n3 4\n")
    code, data = _run(capsys, "harmonious", "--tree", str(f))
    assert code == 0 and "repeated_label" in data


def test_cli_reports_errors_cleanly(capsys, p4_file):
    code, data = _run(capsys, "solve", "--tree", p4_file, "--group", "Q8")
    assert code == 2 and "error" in data
    code, data = _run(capsys, "classify", "--tree", p4_file, "--group", "Z8")
    assert code == 2 and "error" in data  # size mismatch
    code, data = _run(capsys, "solve", "--tree", "/nonexistent/tree.txt", "--group", "Z4")
    assert code == 2 and "error" in data
