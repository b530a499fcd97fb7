from fractions import Fraction as F

import pytest

from pcoh import bang as B
from pcoh.errors import ShapeError
from pcoh.kernel import Kernel
from pcoh.laws import LAWS, SUITES, StructureMaps, laws_in, load_structure, run_suite
from pcoh.space import web


def test_registry_is_complete_and_unique():
    names = [(l.suite, l.name) for l in LAWS]
    assert len(names) == len(set(names))
    for s in SUITES:
        assert laws_in(s), s
    assert len(laws_in("all")) == len(LAWS)
    assert all(l.anchor for l in LAWS)
    with pytest.raises(KeyError):
        laws_in("nonsense")


def test_comonad_suite_passes_with_seed_7():
    rep = run_suite("comonad", seed=7)
    assert rep.ok and len(rep.laws) >= 6


def test_reports_are_deterministic():
    a = run_suite("tensor", seed=11, cases_scale=0.1).to_dict()
    b = run_suite("tensor", seed=11, cases_scale=0.1).to_dict()
    assert a == b
    c = run_suite("tensor", seed=12, cases_scale=0.1).to_dict()
    assert c["seed"] == 12


def test_size_caps_are_respected():
    rep = run_suite("category", seed=1, max_web=1, cases_scale=0.05)
    assert rep.ok


def _corrupt(k: Kernel, i: int, j: int, v) -> Kernel:
    entries = [(a, b, x) for (a, b), x in k.items() if (a, b) != (i, j)] + [(i, j, v)]
    return Kernel(k.src, k.dst, entries)


def test_corrupted_dereliction_fails_with_minimized_counterexample():
    x = web("a", "b")
    d = _corrupt(B.dereliction(x, 2), 1, 0, F(1, 2))
    maps = StructureMaps({"dereliction": load_structure("dereliction", d)})
    rep = run_suite("comonad", seed=7, maps=maps)
    assert not rep.ok
    f = rep.failures[0]
    assert f["anchor"] and f["counterexample"]["dereliction"]["entries"]
    assert f["params"]["cap"] == 1  # shrunk all the way down
    assert f["pinned"] == {"web": ["a", "b"], "N": 2, "M": None}


def test_corrupted_weakening_breaks_comonoid():
    x = web("a")
    w = _corrupt(B.weakening(x, 2), 1, 0, 1)
    rep = run_suite("comonoid", seed=1, maps=StructureMaps({"weakening": load_structure("weakening", w)}))
    assert not rep.ok and any(f["law"] == "counit" for f in rep.failures)


def test_corrupted_storage_and_contraction():
    x = web("a", "b")
    s = _corrupt(B.storage(x, 2, 2), 3, 1, 1)
    rep = run_suite("comonad", seed=2, maps=StructureMaps({"storage": load_structure("storage", s)}))
    assert not rep.ok
    c = _corrupt(B.contraction(x, 2), 0, 5, 1)
    rep = run_suite("k-distributivity", seed=2,
                    maps=StructureMaps({"contraction": load_structure("contraction", c)}))
    assert not rep.ok


def test_load_structure_infers_webs():
    x = web("p", "q", "r")
    k, xx, n, m = load_structure("storage", B.storage(x, 2, 1))
    assert xx == x and (n, m) == (2, 1)
    bad = Kernel(web("a"), web("b"), [])
    with pytest.raises(ShapeError):
        load_structure("dereliction", bad)
    with pytest.raises(ShapeError):
        load_structure("weakening", B.dereliction(x, 1))


def test_overrides_must_agree():
    with pytest.raises(ShapeError):
        StructureMaps({"dereliction": load_structure("dereliction", B.dereliction(web("a"), 1)),
                       "weakening": load_structure("weakening", B.weakening(web("a"), 2))})


def test_text_report_lists_every_law():
    rep = run_suite("semiring", seed=1, cases_scale=0.01)
    text = rep.to_text()
    for l in laws_in("semiring"):
        assert l.name in text
    assert "wall time" not in text and "wall time" in rep.to_text(timing=True)
