"""Orthogonality, polars and bipolars over finite generator sets.

A vector ``f`` over a web is orthogonal to ``mu`` when ``sum_a f(a) mu(a) <= 1``.
For a finite set ``G`` of generators:

* the polar ``G^o = {y : <g, y> <= 1 for all g in G}`` is a polyhedron;
* the bipolar ``G^oo`` is the smallest closed, convex, down-closed set
  containing ``G``; membership of ``x`` is decided by one LP,
  ``sup {<x, y> : y in G^o} <= 1``.

Closed sets are never materialised.  The one fact used everywhere else:
for any direction ``v >= 0``, ``sup {<x, v> : x in G^oo} = max_g <g, v>``.
(If that max is ``s > 0`` then ``v / s`` lies in ``G^o``, so every ``x`` in
the bipolar has ``<x, v> <= s``; the max is attained at a generator.  If
``s = 0`` then ``lambda v`` is in the polar for every ``lambda`` and the sup
is 0.)  This lets morphism checks run on generators alone.
"""
from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import InfiniteEntryError, ModeError, ResourceError, ShapeError
from .kernel import Kernel, pull, push, tensor_vectors
from .lp import LpSolution, solve
from .scalar import INF, ONE, ZERO, Scalar, scalar
from .space import Web, product_web

__all__ = [
    "GenSet", "inner", "is_orthogonal", "check_adjunction", "polar_member",
    "bipolar_member", "bipolar_sup", "bipolar_equal", "sup_on_generators",
    "polar_vertices", "tensor_gens", "tensor_vectors",
]


def _vector(v, n: int) -> tuple:
    v = tuple(scalar(a) for a in v)
    if len(v) != n:
        raise ShapeError(f"vector of length {len(v)} over a web of {n} atoms")
    return v


class GenSet:
    """A web together with a finite list of generating vectors."""

    __slots__ = ("web", "gens")

    def __init__(self, web: Web, gens: Iterable[Sequence] = ()):
        self.web = web
        self.gens = tuple(_vector(g, len(web)) for g in gens)

    def finite(self) -> bool:
        return all(a is not INF for g in self.gens for a in g)

    def require_finite(self):
        if not self.finite():
            raise InfiniteEntryError("generator sets used with LPs must have finite entries")
        return self

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other):
        return isinstance(other, GenSet) and self.web == other.web and self.gens == other.gens

    __hash__ = None

    def __repr__(self):
        return f"GenSet({len(self.web)} atoms, {len(self.gens)} gens)"


def inner(f: Sequence[Scalar], mu: Sequence[Scalar]) -> Scalar:
    """``sum_a f(a) mu(a)`` with ``0 * inf = 0``."""
    if len(f) != len(mu):
        raise ShapeError("inner product of vectors of different lengths")
    acc = ZERO
    for a, b in zip(f, mu):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


def is_orthogonal(f: Sequence[Scalar], mu: Sequence[Scalar]) -> bool:
    return inner(f, mu) <= 1


def check_adjunction(k: Kernel, f: Sequence[Scalar], mu: Sequence[Scalar]) -> bool:
    """``<f | mu pushed along k> == <f pulled back along k | mu>``.

    ``f`` is a function on the target web, ``mu`` a measure on the source.
    """
    return inner(f, push(mu, k)) == inner(pull(k, f), mu)


def polar_member(G: GenSet, y: Sequence[Scalar]) -> bool:
    y = _vector(y, len(G.web))
    return all(inner(g, y) <= 1 for g in G.gens)


def bipolar_sup(G: GenSet, x: Sequence[Scalar]) -> LpSolution:
    """The LP ``sup {<x, y> : y in polar(G)}`` with its witness or ray."""
    G.require_finite()
    x = _vector(x, len(G.web))
    if any(a is INF for a in x):
        raise InfiniteEntryError("bipolar membership needs a finite vector")
    return solve(G.gens, x)


def bipolar_member(G: GenSet, x: Sequence[Scalar]) -> bool:
    return bipolar_sup(G, x).optimum <= 1


def bipolar_equal(G1: GenSet, G2: GenSet) -> bool:
    """Equal bipolars, decided by mutual generator membership."""
    if G1.web != G2.web:
        raise ShapeError("generator sets over different webs")
    return (all(bipolar_member(G2, g) for g in G1.gens)
            and all(bipolar_member(G1, g) for g in G2.gens))


def sup_on_generators(G: GenSet, v: Sequence[Scalar]) -> Scalar:
    """``max_g <g, v>``; equals the sup over the bipolar of ``G`` (0 when empty)."""
    v = _vector(v, len(G.web))
    best = ZERO
    for g in G.gens:
        s = inner(g, v)
        if s > best:
            best = s
    return best


def tensor_gens(G1: GenSet, G2: GenSet) -> GenSet:
    """Pairwise tensors ``g1 (x) g2`` over the product web."""
    return GenSet(product_web(G1.web, G2.web),
                  [tensor_vectors(a, b) for a in G1.gens for b in G2.gens])


def _solve_square(A: list[list], b: list):
    """Unique solution of ``A x = b`` over Fractions, or ``None`` if singular."""
    n = len(A)
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def polar_vertices(G: GenSet, limit: int = 200_000) -> GenSet:
    """Vertices of the polyhedron ``polar(G)``; their bipolar is ``polar(G)``.

    Vertices are found by brute force over choices of ``n`` active
    constraints among ``G y <= 1`` and ``y >= 0``.  The polar must be
    bounded, which holds exactly when every atom carries positive mass in
    some generator.
    """
    G.require_finite()
    n, m = len(G.web), len(G.gens)
    for a in range(n):
        if all(g[a] == 0 for g in G.gens):
            raise ModeError(f"polar is unbounded along atom {G.web.label(a)}: "
                            "no finite generator set exists")
    if comb(n + m, n) > limit:
        raise ResourceError(f"vertex enumeration over {comb(n + m, n)} bases exceeds {limit}")
    rows = [list(g) for g in G.gens] + [[ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    rhs = [ONE] * m + [ZERO] * n
    found = []
    seen = set()
    for active in combinations(range(m + n), n):
        y = _solve_square([rows[i][:] for i in active], [rhs[i] for i in active])
        if y is None or any(v < 0 for v in y):
            continue
        if any(inner(g, y) > 1 for g in G.gens):
            continue
        t = tuple(y)
        if t not in seen:
            seen.add(t)
            found.append(t)
    found.sort()
    return GenSet(G.web, found)
