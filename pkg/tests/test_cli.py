import json
from fractions import Fraction as F

import pytest

from pcoh import bang as B
from pcoh.cli import main
from pcoh.io import load_kernel, save_kernel
from pcoh.kernel import Kernel
from pcoh.space import Web, web


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bang_half(capsys, data_dir, tmp_path):
    code, out, _ = run(capsys, "bang", data_dir / "half.json", "--max-degree", 2, "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["src"] == ["[]", "[a]", "[a*2]"] and d["dst"] == ["[]", "[b]", "[b*2]"]
    assert d["entries"] == [[0, 0, "1"], [1, 1, "1/2"], [2, 2, "1/4"]]
    code, out, _ = run(capsys, "bang", data_dir / "half.json", "--max-degree", 0, "--format", "json")
    assert json.loads(out)["entries"] == [[0, 0, "1"]]


def test_bang_both_and_round_trip(capsys, tmp_path):
    t = Kernel(web("a", "b"), web("c", "d"), [(0, 0, F(1, 3)), (0, 1, 2), (1, 0, F(3, 4)), (1, 1, 1)])
    save_kernel(t, tmp_path / "t.json")
    out = tmp_path / "bt.json"
    code, _, _ = run(capsys, "bang", tmp_path / "t.json", "--max-degree", 2, "--algorithm", "both",
                     "--format", "json", "--out", out)
    assert code == 0
    k = load_kernel(out)
    assert k.to_dense() == B.bang(t, 2).to_dense()
    assert list(k.src.labels) == list(B.bang(t, 2).src.labels)


def test_pcoh_checks(capsys, data_dir):
    code, out, _ = run(capsys, "pcoh", "check-object", data_dir / "valid.json")
    assert code == 0 and out.startswith("valid")
    code, out, _ = run(capsys, "pcoh", "check-object", data_dir / "zero_column.json")
    assert code == 1 and out.startswith("invalid: atom b sup=0")
    code, out, _ = run(capsys, "pcoh", "check-object", data_dir / "empty_gens.json")
    assert code == 1 and "polar sup=inf" in out


def test_identity_morphism(capsys, data_dir, tmp_path):
    w = Web(["a", "b"])
    save_kernel(Kernel(w, w, [(0, 0, 1), (1, 1, 1)]), tmp_path / "id.json")
    obj = data_dir / "valid.json"
    code, out, _ = run(capsys, "pcoh", "check-morphism", tmp_path / "id.json", obj, obj)
    assert code == 0 and out.startswith("morphism: yes")


def test_compose_trace_polar(capsys, data_dir):
    code, out, _ = run(capsys, "compose", data_dir / "compose_left.json", data_dir / "compose_right.json",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["entries"] == [[0, 0, "2/3"], [0, 1, "1/3"], [1, 0, "1/3"], [1, 1, "2/3"]]
    code, out, _ = run(capsys, "trace", data_dir / "feedback.json", "--split", 1, "--format", "json")
    assert code == 0 and json.loads(out)["entries"] == [[0, 0, "1"]]
    code, out, _ = run(capsys, "polar", data_dir / "two_star.json", "--member", "1/2")
    assert code == 0 and out == "yes\n"
    code, out, _ = run(capsys, "polar", data_dir / "two_star.json", "--member", "3/4")
    assert code == 1 and out == "no\n"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "laws", "--suite", "nonsense")[0] == 2
    assert run(capsys)[0] == 2
    (tmp_path / "bad.json").write_text("{ nope")
    assert run(capsys, "bang", tmp_path / "bad.json", "--max-degree", 1)[0] == 2
    assert run(capsys, "bang", tmp_path / "missing.json", "--max-degree", 1)[0] == 2
    big = Web([f"x{i}" for i in range(40)])
    save_kernel(Kernel(big, big, [(0, 0, 1)]), tmp_path / "big.json")
    code, _, err = run(capsys, "bang", tmp_path / "big.json", "--max-degree", 9)
    assert code == 3 and "resource" in err


def test_laws_comonad_seed_7(capsys):
    code, out, _ = run(capsys, "laws", "--suite", "comonad", "--seed", 7, "--format", "json")
    rep = json.loads(out)
    assert code == 0 and len(rep["laws"]) >= 6 and rep["failures"] == []


def test_corrupted_kernel_file(capsys, tmp_path):
    d = B.dereliction(web("a", "b"), 2)
    bad = Kernel(d.src, d.dst, [(i, j, F(1, 2)) for (i, j), _ in d.items()])
    save_kernel(bad, tmp_path / "d.json")
    code, out, _ = run(capsys, "laws", "--suite", "comonad", "--seed", 7,
                       "--structure", f"dereliction={tmp_path / 'd.json'}", "--format", "json")
    rep = json.loads(out)
    assert code == 1 and rep["failures"]
    assert all("counterexample" in f and f["anchor"] for f in rep["failures"])
    assert run(capsys, "laws", "--structure", "bogus=x.json")[0] == 2


def test_reports_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "laws", "--suite", "pcoh", "--seed", 3, "--format", "json", "--out", p)[0] == 0
    assert a.read_bytes() == b.read_bytes()
