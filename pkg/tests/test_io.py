from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pcoh.errors import ParseError
from pcoh.glueing import POLAR, GlueObject, Points
from pcoh.io import (
    dumps_kernel, glue_from_dict, glue_to_dict, kernel_from_dict, load_kernel, load_pcoh,
    loads_kernel, pcoh_from_dict, pcoh_to_dict, save_kernel,
)
from pcoh.kernel import Kernel
from pcoh.scalar import INF
from pcoh.space import web

from conftest import scalars


def test_kernel_round_trip(tmp_path):
    k = Kernel(web("a", "b"), web("c"), [(0, 0, F(1, 2)), (1, 0, INF)])
    text = dumps_kernel(k)
    assert loads_kernel(text) == k
    assert dumps_kernel(loads_kernel(text)) == text
    save_kernel(k, tmp_path / "k.json")
    assert load_kernel(tmp_path / "k.json") == k


@given(st.lists(scalars(), min_size=6, max_size=6))
def test_kernel_round_trip_bit_exact(vals):
    k = Kernel(web("a", "b"), web("c", "d", "e"), [(i // 3, i % 3, v) for i, v in enumerate(vals)])
    assert dumps_kernel(loads_kernel(dumps_kernel(k))) == dumps_kernel(k)


@pytest.mark.parametrize("text", [
    "not json",
    '{"src": ["a"], "dst": ["b"]}',
    '{"src": ["a"], "dst": ["b"], "entries": [[0, 0, 0.5]]}',
    '{"src": ["a"], "dst": ["b"], "entries": [[0, 1, "1"]]}',
    '{"src": ["a", "a"], "dst": ["b"], "entries": []}',
    '{"src": ["a"], "dst": ["b"], "entries": [[0, 0, "-1"]]}',
])
def test_kernel_parse_errors(text):
    with pytest.raises(ParseError):
        loads_kernel(text)


def test_glue_formats():
    A = glue_from_dict({"web": ["a"], "mode": "exact-set", "U": [["1/2"]], "R": [["2"]]})
    assert A.mode == "exact" and isinstance(A.U, Points)
    assert glue_to_dict(A) == {"web": ["a"], "mode": "exact", "U": [["1/2"]], "R": [["2"]]}
    P = glue_from_dict({"web": ["a"], "U": "polar(R)", "R": [["1"]]})
    assert P.U is POLAR
    with pytest.raises(ParseError):
        glue_from_dict({"web": ["a"], "mode": "exact", "U": "polar(R)", "R": [["1"]]})
    with pytest.raises(ParseError):
        glue_from_dict({"web": ["a"], "U": "polar(R)", "R": "polar(U)"})


def test_pcoh_formats(data_dir):
    X = pcoh_from_dict({"web": ["a", "b"], "gens": [["1", "0"], ["0", "1"]]})
    assert pcoh_to_dict(X)["R"] == "polar(U)"
    assert pcoh_from_dict(pcoh_to_dict(X)).gens == X.gens
    for name in ("valid", "zero_column", "empty_gens"):
        load_pcoh(data_dir / f"{name}.json")
