from fractions import Fraction as F

from pcoh.oracles import (
    CONVERGENT, DIVERGENT, STABLE, brute_bang, brute_lp, naive_compose, ryser_permanent,
    shuffle_curry, star_oracle,
)
from pcoh.scalar import INF


def test_star_oracle_classifications():
    vals, kinds, _ = star_oracle([[F(1, 2)]])
    assert vals == [[2]] and kinds == [[CONVERGENT]]
    vals, kinds, _ = star_oracle([[1]])
    assert vals == [[INF]] and kinds == [[DIVERGENT]]
    vals, kinds, _ = star_oracle([[0, 1], [0, 0]])
    assert vals == [[1, 1], [0, 1]] and kinds[0][1] == STABLE
    vals, kinds, _ = star_oracle([[0, INF], [0, 0]])
    assert vals[0][1] is INF and kinds[0][1] == STABLE
    vals, kinds, _ = star_oracle([[F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)]])
    assert all(v is INF for r in vals for v in r)


def test_star_oracle_unreachable_divergence_does_not_leak():
    # node 1 loops divergently but is not reachable from node 0
    vals, kinds, _ = star_oracle([[F(1, 3), 0], [1, 2]])
    assert vals[0][0] == F(3, 2) and vals[0][1] == 0 and vals[1][1] is INF


def test_permanent_and_brute_bang():
    assert ryser_permanent([[1, 2], [3, 4]]) == 10
    assert ryser_permanent([[1, 1, 1]] * 3) == 6
    assert ryser_permanent([]) == 1
    t = [[F(1, 2)]]
    assert brute_bang(t, [0, 0], [0, 0]) == F(1, 4)


def test_brute_lp():
    assert brute_lp([[2]], [1]) == (F(1, 2), (F(1, 2),))
    assert brute_lp([[1, 0]], [0, 1])[0] is INF


def test_naive_and_shuffle():
    assert naive_compose([[1, 2]], [[3], [4]]) == [[11]]
    k = [[1], [2], [3], [4]]  # (x, y) rows over X = Y = 2 atoms, Z one atom
    assert shuffle_curry(k, 2, 2, 1) == [[1, 2], [3, 4]]
