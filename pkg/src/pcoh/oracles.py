"""Slow, independent reference computations used to check the fast paths.

Nothing here shares code with the algorithms it checks: matrices are
plain nested lists, permutations are enumerated in full, LPs are solved by
trying every basis, and geometric series are summed term by term.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial
from typing import Optional, Sequence

from .scalar import INF, ONE, ZERO

__all__ = [
    "naive_compose", "naive_tensor", "partial_sums", "star_oracle",
    "ryser_permanent", "brute_bang", "brute_lp", "shuffle_curry",
    "STABLE", "DIVERGENT", "CONVERGENT",
]

STABLE, DIVERGENT, CONVERGENT = "stable", "divergent", "convergent"


def naive_compose(A, B):
    n, m = len(A), len(B)
    p = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for k in range(p):
            s = ZERO
            for j in range(m):
                if A[i][j] != 0 and B[j][k] != 0:
                    s = s + A[i][j] * B[j][k]
            row.append(s)
        out.append(row)
    return out


def naive_tensor(A, B):
    """Kronecker product, row-major on both sides."""
    out = []
    for r1 in A:
        for r2 in B:
            out.append([ZERO if (a == 0 or b == 0) else a * b for a in r1 for b in r2])
    return out


def partial_sums(A, K: int) -> list:
    """``[S_0, ..., S_K]`` with ``S_k = I + A + ... + A^k``."""
    n = len(A)
    power = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    S = [row[:] for row in power]
    out = [[row[:] for row in S]]
    for _ in range(K):
        power = naive_compose(power, A)
        S = [[S[i][j] + power[i][j] for j in range(n)] for i in range(n)]
        out.append([row[:] for row in S])
    return out


def _det(M) -> Fraction:
    """Determinant by fraction-exact elimination."""
    M = [row[:] for row in M]
    n = len(M)
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _inverse_entry(B, i: int, j: int) -> Fraction:
    """``((I - B)^-1)[i][j]`` by Gauss-Jordan on the augmented system."""
    n = len(B)
    M = [[(ONE if r == c else ZERO) - B[r][c] for c in range(n)] + [ONE if r == j else ZERO]
         for r in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return M[i][n]


def _reach(A, start: int, forward: bool = True) -> set:
    n = len(A)
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for w in range(n):
            edge = A[v][w] if forward else A[w][v]
            if edge != 0 and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _radius_at_least_one(B) -> bool:
    """For a nonnegative finite square ``B``: spectral radius ``>= 1``.

    ``rho(B) < 1`` exactly when ``I - B`` is a nonsingular M-matrix, i.e.
    all leading principal minors of ``I - B`` are positive.
    """
    n = len(B)
    I_B = [[(ONE if r == c else ZERO) - B[r][c] for c in range(n)] for r in range(n)]
    return any(_det([row[:k] for row in I_B[:k]]) <= 0 for k in range(1, n + 1))


def star_oracle(A, K: int = 64):
    """Classify and evaluate every entry of ``sum_n A^n``.

    Returns ``(values, kinds, sums)`` where ``kinds[i][j]`` is one of
    :data:`STABLE` (partial sums stop changing between ``K/2`` and ``K``),
    :data:`DIVERGENT` (a node on some ``i -> j`` path lies on a cycle of
    spectral radius ``>= 1`` or an infinite edge lies on such a path) or
    :data:`CONVERGENT` (the limit is an entry of ``(I - A_V)^-1`` over the
    nodes ``V`` on ``i -> j`` paths, sandwiched by the partial sums).
    """
    n = len(A)
    sums = partial_sums(A, K)
    SK, Sh = sums[K], sums[K // 2]
    values = [[None] * n for _ in range(n)]
    kinds = [[None] * n for _ in range(n)]
    fwd = [_reach(A, i, True) for i in range(n)]
    bwd = [_reach(A, j, False) for j in range(n)]
    # strongly connected pieces with a cycle
    bad_nodes = set()
    for v in range(n):
        comp = sorted(fwd[v] & bwd[v])
        if len(comp) == 1 and A[v][v] == 0:
            continue
        sub = [[A[r][c] for c in comp] for r in comp]
        if any(x is INF for row in sub for x in row) or _radius_at_least_one(sub):
            bad_nodes.add(v)
    inf_edges = [(r, c) for r in range(n) for c in range(n) if A[r][c] is INF]
    for i in range(n):
        for j in range(n):
            V = sorted(fwd[i] & bwd[j])
            divergent = any(v in bad_nodes for v in V) or any(
                r in fwd[i] and c in bwd[j] for r, c in inf_edges)
            if SK[i][j] == Sh[i][j]:
                kinds[i][j], values[i][j] = STABLE, SK[i][j]
                if divergent and SK[i][j] is not INF:
                    raise AssertionError(f"entry {(i, j)} stabilised on a divergent path")
            elif divergent:
                kinds[i][j], values[i][j] = DIVERGENT, INF
            else:
                sub = [[A[r][c] for c in V] for r in V]
                lim = _inverse_entry(sub, V.index(i), V.index(j))
                if not (SK[i][j] <= lim and lim - SK[i][j] < lim - Sh[i][j]):
                    raise AssertionError(f"partial sums do not sandwich the limit at {(i, j)}")
                kinds[i][j], values[i][j] = CONVERGENT, lim
    return values, kinds, sums


def ryser_permanent(M) -> Fraction:
    """Permanent of a square matrix by Ryser's inclusion-exclusion formula."""
    n = len(M)
    if n == 0:
        return ONE
    total = ZERO
    for r in range(1, n + 1):
        for cols in combinations(range(n), r):
            prod_ = ONE
            for i in range(n):
                s = sum((M[i][j] for j in cols), ZERO)
                prod_ *= s
                if prod_ == 0:
                    break
            total += (-1) ** r * prod_
    return (-1) ** n * total


def brute_bang(t, a: Sequence[int], b: Sequence[int]):
    """``(1/a!) sum over all n! permutations s of prod_i t[a_s(i)][b_i]``.

    ``a`` and ``b`` are element sequences (any enumeration of the multisets).
    """
    if len(a) != len(b):
        return ZERO
    n = len(a)
    total = ZERO
    for perm in permutations(range(n)):
        p = ONE
        for i in range(n):
            p = p * t[a[perm[i]]][b[i]]
            if p == 0:
                break
        total = total + p
    stab = 1
    for x in set(a):
        stab *= factorial(a.count(x))
    return total if total is INF else total / stab


def brute_lp(G, c) -> tuple:
    """``max c.y`` over ``{y >= 0 : G y <= 1}`` by trying every basis.

    Returns ``(optimum, argmax)``; the optimum is ``INF`` with ``None``
    when some improving coordinate is unconstrained.
    """
    n, m = len(c), len(G)
    for j in range(n):
        if c[j] > 0 and all(G[i][j] == 0 for i in range(m)):
            return INF, None
    rows = [list(g) for g in G] + [[ONE if k == j else ZERO for k in range(n)] for j in range(n)]
    rhs = [ONE] * m + [ZERO] * n
    best, arg = ZERO, tuple([ZERO] * n)
    for active in combinations(range(m + n), n):
        A = [rows[i] for i in active]
        d = _det(A)
        if d == 0:
            continue
        y = []
        for col in range(n):  # Cramer's rule
            Ac = [[rhs[active[r]] if k == col else A[r][k] for k in range(n)] for r in range(n)]
            y.append(_det(Ac) / d)
        if any(v < 0 for v in y):
            continue
        if any(sum((g[k] * y[k] for k in range(n)), ZERO) > 1 for g in G):
            continue
        val = sum((c[k] * y[k] for k in range(n)), ZERO)
        if val > best:
            best, arg = val, tuple(y)
    return best, arg


def shuffle_curry(k, nx: int, ny: int, nz: int):
    """Reindex ``k((x, y), z)`` as ``k'(x, (z, y))`` on dense row-major matrices."""
    return [[k[x * ny + y][z] for z in range(nz) for y in range(ny)] for x in range(nx)]
