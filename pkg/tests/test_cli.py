import json

import pytest

from rigidquad.cli import main
from rigidquad.trees import PartitionTree


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_series_r(capsys):
    code, out, _ = run(capsys, "series", "r", "--order", "6")
    assert code == 0
    assert [line.split()[1] for line in out.splitlines()[:4]] == ["1", "-2", "-4", "-20"]


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "h", "--order", "4", "--base", "1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["coefficients"] == ["0", "0", "1", "2", "10"]
    assert doc["params"] == {"base": 1}


def test_count_with_oracle(capsys):
    code, out, _ = run(capsys, "count", "--family", "h", "--n", "4", "--base", "1", "--oracle")
    assert code == 0 and out.split() == ["10", "10", "OK"]
    code, out, _ = run(capsys, "count", "--family", "delta", "--n", "2", "--base", "2", "--cobase", "2",
                       "--oracle", "--json")
    doc = json.loads(out)
    assert doc["count"] == doc["oracle"] == "1/2" and doc["agree"]


def test_usage_and_domain_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["series", "nope"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["count", "--n", "3"])
    assert info.value.code == 2
    code, _, err = run(capsys, "count", "--family", "b", "--n", "2", "--base", "1")
    assert code == 1 and "cobase" in err
    code, _, err = run(capsys, "sample", "quad", "--base", "1", "--n-max", "5", "--n", "5", "--budget", "0")
    assert code == 1 and "budget" in err


def test_sample_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    svg = tmp_path / "a.svg"
    assert run(capsys, "sample", "quad", "--base", "2", "--n-max", "8", "--seed", "9", "--out", str(a),
               "--svg", str(svg))[0] == 0
    assert run(capsys, "sample", "quad", "--base", "2", "--n-max", "8", "--seed", "9", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["base_length"] == 2 and doc["seed"] == 9
    assert svg.read_text().startswith("<?xml")


def test_convert_round_trip(tmp_path, capsys):
    tree = tmp_path / "tree.json"
    quad, back = tmp_path / "quad.json", tmp_path / "back.json"
    run(capsys, "sample", "quad", "--base", "-2", "--n-max", "7", "--seed", "3", "--out", str(quad))
    assert run(capsys, "convert", "quad-to-tree", "--in", str(quad), "--out", str(tree))[0] == 0
    assert run(capsys, "convert", "tree-to-quad", "--in", str(tree), "--out", str(quad))[0] == 0
    assert run(capsys, "convert", "quad-to-tree", "--in", str(quad), "--out", str(back))[0] == 0
    assert tree.read_bytes() == back.read_bytes()


def test_convert_shifts(tmp_path, capsys):
    h = tmp_path / "h.json"
    q, h2 = tmp_path / "q.json", tmp_path / "h2.json"
    h.write_text(json.dumps(PartitionTree("100", [-1, 0, 0]).to_dict()))
    assert run(capsys, "convert", "h-to-q", "--in", str(h), "--out", str(q))[0] == 0
    assert PartitionTree.from_dict(json.loads(q.read_text())).leaf_labels() == (0, -2)
    assert run(capsys, "convert", "q-to-h", "--in", str(q), "--out", str(h2))[0] == 0
    assert PartitionTree.from_dict(json.loads(h2.read_text())) == PartitionTree("100", [-1, 0, 0])
    assert run(capsys, "convert", "h-to-q", "--in", str(h), "--base", "-3", "--out", str(q))[0] == 0
    assert run(capsys, "convert", "q-to-h", "--hat", "--in", str(q), "--out", str(h2))[0] == 0
    assert PartitionTree.from_dict(json.loads(h2.read_text())) == PartitionTree("100", [-1, 0, 0])


def test_bad_input_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"opposite": [1, 0], "next": [0, 1], "root": 0}')
    code, _, err = run(capsys, "render", "--in", str(bad), "--svg", str(tmp_path / "x.svg"))
    assert code == 1 and err


def test_render(tmp_path, capsys):
    quad = tmp_path / "quad.json"
    run(capsys, "sample", "quad", "--base", "1", "--n-max", "6", "--seed", "1", "--out", str(quad))
    svg, imm = tmp_path / "m.svg", tmp_path / "m.json"
    assert run(capsys, "render", "--in", str(quad), "--svg", str(svg), "--immersion", str(imm))[0] == 0
    doc = json.loads(imm.read_text())
    assert set(doc) == {"vertices", "faces", "overlaps"}
    assert sum(k for _, k in doc["overlaps"]) == len(doc["faces"])


def test_verify_series(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "series")
    assert code == 0 and out.count("PASS") == 4
