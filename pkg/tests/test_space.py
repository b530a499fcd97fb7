from math import comb

import pytest
from hypothesis import given, strategies as st

from pcoh.errors import ResourceError, ShapeError
from pcoh.space import (
    EMPTY, Multiset, Web, coproduct_web, counting, exp_web, flatten, multiset_label,
    parse_multiset_label, product_web, web,
)


def labels_of(e):
    return list(e.labels)


def test_exp_web_examples():
    ab = web("a", "b")
    assert labels_of(exp_web(ab, 2)) == ["[]", "[a]", "[b]", "[a*2]", "[a,b]", "[b*2]"]
    assert labels_of(exp_web(web("a"), 0)) == ["[]"]
    assert len(exp_web(web("a", "b", "c"), 1)) == 4


def test_counting_examples():
    m = Multiset.of([0, 0, 1])  # [a,a,b]
    assert counting([0], m) == 2
    assert counting([0, 1], m) == 3
    assert counting([], Multiset.of([0, 1])) == 0


def test_flatten_examples():
    x = web("a", "b")
    e = exp_web(x, 2)
    a, ab, aa, b, empty = (e.index[Multiset.of(s)] for s in ([0], [0, 1], [0, 0], [1], []))
    assert flatten(Multiset.of([a, ab]), e) == Multiset.of([0, 0, 1])
    assert flatten(Multiset.of([empty]), e) == Multiset.of([])
    assert flatten(Multiset.of([aa, b, b]), e) == Multiset.of([0, 0, 1, 1])


def test_coproduct_and_product_examples():
    assert list(coproduct_web(web("a"), web("b")).labels) == ["inl.a", "inr.b"]
    assert list(product_web(web("a", "b"), web("c")).labels) == ["(a,c)", "(b,c)"]
    assert list(coproduct_web(EMPTY, web("a")).labels) == ["inr.a"]
    p = product_web(web("a", "b"), web("c", "d", "e"))
    assert all(p.split_index(p.pair_index(i, j)) == (i, j) for i in range(2) for j in range(3))


def test_web_rejects_duplicates():
    with pytest.raises(ShapeError):
        web("a", "a")


def test_multiset_basics():
    m = Multiset.of([2, 0, 0])
    assert m.degree == 3 and m.elements() == (0, 0, 2)
    assert m.factorial() == 2 and m.multinomial() == 3
    assert m + Multiset.of([2]) == Multiset.of([0, 0, 2, 2])
    assert multiset_label(m, ["a", "b", "c"]) == "[a*2,c]"


def test_exp_web_size_bound():
    with pytest.raises(ResourceError):
        exp_web(Web([f"x{i}" for i in range(30)]), 8)


@pytest.mark.parametrize("n_atoms", range(0, 5))
@pytest.mark.parametrize("N", range(0, 5))
def test_grade_sizes(n_atoms, N):
    e = exp_web(Web([f"x{i}" for i in range(n_atoms)]), N)
    for n in range(N + 1):
        want = comb(n + n_atoms - 1, n) if n_atoms else int(n == 0)
        assert len(e.grade(n)) == want


def test_label_round_trip_nested():
    x = web("a", "b")
    e = exp_web(x, 2)
    ee = exp_web(e, 2)
    for lab, m in zip(ee.labels, ee.atoms):
        assert ee.parse_label(lab) == m
    for lab, m in zip(e.labels, e.atoms):
        assert parse_multiset_label(lab, x) == m


@given(st.lists(st.integers(0, 5), max_size=3), st.lists(st.integers(0, 5), max_size=3))
def test_flatten_is_homomorphism(l1, l2):
    e = exp_web(web("a", "b"), 2)  # six atoms
    m1, m2 = Multiset.of(l1), Multiset.of(l2)
    assert flatten(m1 + m2, e) == flatten(m1, e) + flatten(m2, e)
    assert flatten(m1, e).degree == sum(e.atoms[i].degree for i in l1)
