from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pcoh.errors import InfiniteEntryError, ShapeError
from pcoh.lp import solve
from pcoh.oracles import brute_lp
from pcoh.scalar import INF

from conftest import scalars


def test_one_dimensional():
    sol = solve([[F(2)]], [F(1)])
    assert sol.optimum == F(1, 2) and sol.witness == (F(1, 2),) and sol.bounded


def test_unconstrained_coordinate():
    sol = solve([[1, 0]], [0, 1])
    assert sol.optimum is INF and not sol.bounded
    assert sol.ray[1] > 0 and sol.ray[0] == 0


def test_no_constraints():
    assert solve([], [1]).optimum is INF
    assert solve([], [0]).optimum == 0


def test_rejects_infinite_and_ragged():
    with pytest.raises(InfiniteEntryError):
        solve([[INF]], [1])
    with pytest.raises(ShapeError):
        solve([[1, 2]], [1])


def test_dual_certificate():
    G = [[1, 2], [3, 1]]
    sol = solve(G, [1, 1])
    assert sol.optimum == F(3, 5)
    assert sum(sol.dual) == sol.optimum
    assert all(sum(z * g[j] for z, g in zip(sol.dual, G)) >= 1 for j in range(2))


def test_degenerate_cycling_example_terminates():
    # a classic degenerate instance; Bland's rule must not cycle
    G = [[F(1, 4), 0, 1, 9], [F(1, 2), 12, F(1, 2), 3], [0, 0, 1, 0]]
    c = [F(3, 4), 20, F(1, 2), 6]
    assert solve(G, c).optimum == brute_lp(G, c)[0]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.data())
def test_simplex_matches_brute_force(n, m, data):
    G = [[data.draw(scalars(False)) for _ in range(n)] for _ in range(m)]
    c = [data.draw(scalars(False)) for _ in range(n)]
    sol = solve(G, c)
    assert sol.optimum == brute_lp(G, c)[0]
    y = sol.witness
    assert all(v >= 0 for v in y)
    assert all(sum(a * b for a, b in zip(g, y)) <= 1 for g in G)
