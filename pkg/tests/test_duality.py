from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pcoh import kernel as K
from pcoh.duality import (
    GenSet, bipolar_equal, bipolar_member, bipolar_sup, check_adjunction, inner, is_orthogonal,
    polar_member, polar_vertices, sup_on_generators,
)
from pcoh.errors import InfiniteEntryError, ModeError
from pcoh.kernel import Kernel
from pcoh.scalar import INF, ZERO
from pcoh.space import web

from conftest import scalars

S, AB = web("*"), web("a", "b")


def test_inner_examples():
    assert inner((1, 2), (F(1, 2), F(1, 4))) == 1
    assert inner((3, 5), (0, 0)) == 0
    assert inner((INF, 1), (0, F(1, 2))) == F(1, 2)


def test_orthogonality_boundary():
    assert is_orthogonal((1, 2), (F(1, 2), F(1, 4)))
    assert not is_orthogonal((INF,), (1,))


def test_adjunction_examples():
    f, mu = (F(1, 3), 2), (F(1, 2), F(5, 4))
    k = Kernel(AB, AB, [(0, 0, 1), (0, 1, F(2, 3)), (1, 0, 3), (1, 1, F(1, 4))])
    assert check_adjunction(k, f, mu)
    assert inner(f, K.push(mu, K.identity(AB))) == inner(f, mu)
    assert inner(f, K.push(mu, K.zero(AB, AB))) == 0


def test_polar_member_examples():
    G = GenSet(S, [(2,)])
    assert polar_member(G, (F(1, 2),)) and not polar_member(G, (F(3, 4),))
    assert polar_member(G, (0,))
    assert polar_member(GenSet(S, []), (100,))


def test_bipolar_member_examples():
    G = GenSet(S, [(2,)])
    assert bipolar_member(G, (2,))
    assert bipolar_sup(G, (F(5, 2),)).optimum == F(5, 4)
    assert not bipolar_member(G, (F(5, 2),))
    assert bipolar_sup(GenSet(AB, [(1, 0)]), (0, 1)).optimum is INF
    assert not bipolar_member(GenSet(AB, [(1, 0)]), (0, 1))


def test_bipolar_equal_examples():
    G = GenSet(AB, [(1, 0), (0, 1)])
    assert bipolar_equal(G, GenSet(AB, list(G.gens) + [(0, 0)]))
    assert not bipolar_equal(GenSet(S, [(2,)]), GenSet(S, [(1,)]))
    assert bipolar_equal(G, GenSet(AB, list(G.gens) + [(F(1, 2), F(1, 2))]))


def test_infinite_entries_rejected_by_lp():
    with pytest.raises(InfiniteEntryError):
        bipolar_member(GenSet(S, [(INF,)]), (1,))
    with pytest.raises(InfiniteEntryError):
        bipolar_member(GenSet(S, [(1,)]), (INF,))


def test_polar_vertices():
    V = polar_vertices(GenSet(AB, [(1, 0), (0, 1)]))
    assert set(V.gens) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    V = polar_vertices(GenSet(AB, [(1, 1)]))
    assert set(V.gens) == {(0, 0), (1, 0), (0, 1)}
    with pytest.raises(ModeError):
        polar_vertices(GenSet(AB, [(1, 0)]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(scalars(False), scalars(False)), min_size=1, max_size=3),
       st.tuples(scalars(False), scalars(False)))
def test_generator_sup_bounds_bipolar(gens, v):
    G = GenSet(AB, gens)
    s = sup_on_generators(G, v)
    for g in G.gens:
        assert bipolar_member(G, g)
        assert inner(g, v) <= s
    if s > 0:
        assert polar_member(G, tuple(a / s for a in v))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(scalars(False, 2), scalars(False, 2)), min_size=1, max_size=3))
def test_polar_vertices_generate_the_polar(gens):
    G = GenSet(AB, gens)
    if any(all(g[a] == 0 for g in G.gens) for a in range(2)):
        return
    V = polar_vertices(G)
    assert all(polar_member(G, v) for v in V.gens)
    # the bipolar of the vertices is the polar: probe with the generators' own polars
    for g in G.gens:
        assert sup_on_generators(V, g) <= 1
