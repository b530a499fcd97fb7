"""Exact linear programmes of the form ``max c.y  s.t.  G y <= 1, y >= 0``.

The origin is always feasible, so the only possible outcomes are a finite
optimum or unboundedness (reported as ``INF``).  The solver is a dense
tableau simplex over ``Fraction`` with Bland's rule, which cannot cycle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InfiniteEntryError, ShapeError
from .scalar import INF, ONE, ZERO, Scalar, scalar

__all__ = ["LpSolution", "solve"]


@dataclass(frozen=True)
class LpSolution:
    """Outcome of :func:`solve`.

    ``witness`` is an optimal vertex when the optimum is finite and the
    last vertex visited otherwise; ``ray`` is a recession direction with
    positive objective when the problem is unbounded; ``dual`` is an
    optimal dual multiplier vector (``G^T z >= c``, ``z >= 0``,
    ``sum z = optimum``) when the optimum is finite.
    """

    optimum: Scalar
    witness: tuple
    ray: Optional[tuple] = None
    dual: Optional[tuple] = None
    pivots: int = 0

    @property
    def bounded(self) -> bool:
        return self.optimum is not INF


def _finite(values, what):
    out = []
    for v in values:
        v = scalar(v)
        if v is INF:
            raise InfiniteEntryError(f"infinite entry in {what}")
        out.append(v)
    return out


def solve(G: Sequence[Sequence], c: Sequence) -> LpSolution:
    """Maximise ``c . y`` over ``{y >= 0 : G y <= 1}``."""
    c = _finite(c, "objective")
    n = len(c)
    G = [_finite(row, "constraints") for row in G]
    for row in G:
        if len(row) != n:
            raise ShapeError(f"constraint of length {len(row)}, objective of length {n}")
    m = len(G)

    # tableau rows: [G_i | e_i | 1]; obj holds reduced costs for a maximisation
    T = [row[:] + [ONE if k == i else ZERO for k in range(m)] + [ONE] for i, row in enumerate(G)]
    obj = c[:] + [ZERO] * m
    value = ZERO
    basis = [n + i for i in range(m)]
    pivots = 0

    while True:
        enter = next((j for j in range(n + m) if obj[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            point = [ZERO] * n
            ray = [ZERO] * n
            for i, b in enumerate(basis):
                if b < n:
                    point[b] = T[i][-1]
                    ray[b] = -T[i][enter]
            if enter < n:
                ray[enter] = ONE
            return LpSolution(INF, tuple(point), ray=tuple(ray), pivots=pivots)
        # pivot
        prow = T[leave]
        p = prow[enter]
        prow = [v / p for v in prow]
        T[leave] = prow
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f != 0:
                    T[i] = [a - f * b for a, b in zip(T[i], prow)]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, prow[:-1])]
        value = value + f * prow[-1]
        basis[leave] = enter
        pivots += 1

    point = [ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            point[b] = T[i][-1]
    dual = tuple(-obj[n + i] for i in range(m))
    return LpSolution(value, tuple(point), dual=dual, pivots=pivots)
