from fractions import Fraction as F

import pytest
from hypothesis import given

from pcoh.errors import ParseError
from pcoh.oracles import partial_sums
from pcoh.scalar import INF, ONE, ZERO, add, format_scalar, mul, parse_scalar, scalar, star

from conftest import scalars


def test_add_examples():
    assert add(F(1, 2), F(1, 3)) == F(5, 6)
    assert add(INF, ZERO) is INF
    assert add(ZERO, ZERO) == 0


def test_mul_examples():
    assert mul(F(2, 3), F(3, 4)) == F(1, 2)
    assert mul(ZERO, INF) == 0
    assert mul(INF, ZERO) == 0
    assert mul(INF, F(1, 5)) is INF


def test_star_examples():
    assert star(ZERO) == 1
    assert star(ONE) is INF
    assert star(F(3, 2)) is INF
    assert star(INF) is INF
    assert star(F(1, 2)) == 2


def test_star_half_matches_partial_sums():
    sums = partial_sums([[F(1, 2)]], 64)
    # strictly increasing, within 2^-64 of the limit, never above it
    assert sums[64][0][0] < 2 and 2 - sums[64][0][0] == F(1, 2 ** 64)
    assert star(F(1, 2)) == 2


def test_inf_ordering():
    assert F(10 ** 9) < INF and INF <= INF and not INF < INF
    assert ZERO < INF and INF > ONE


def test_scalar_coercion_rejects_floats_and_negatives():
    with pytest.raises((TypeError, ValueError)):
        scalar(0.5)
    with pytest.raises(ValueError):
        scalar(-1)
    assert scalar("3/6") == F(1, 2)
    assert scalar(2) == 2


def test_text_round_trip():
    for text in ("0", "1", "1/2", "7/3", "inf"):
        assert format_scalar(parse_scalar(text)) == text
    assert format_scalar(F(4, 2)) == "2"
    for bad in ("x", "1/0", "-1", "0.5", ""):
        with pytest.raises(ParseError):
            parse_scalar(bad)


@given(scalars(), scalars(), scalars())
def test_semiring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    assert mul(ONE, a) == a and mul(ZERO, a) == 0


@given(scalars())
def test_star_axiom(a):
    assert star(a) == ONE + mul(a, star(a))


@given(scalars(allow_inf=False, cap=9))
def test_star_below_one_matches_series(a):
    if a < 1:
        assert star(a) == 1 / (1 - a)
        assert partial_sums([[a]], 20)[20][0][0] <= star(a)
