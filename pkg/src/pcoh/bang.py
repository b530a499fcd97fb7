"""The exponential on truncated multiset webs.

Every structure map is emitted in the plain matrix orientation of
:mod:`pcoh.kernel`: a point ``u`` of ``X`` is pushed forward as a row
vector, so ``push(k(u), dereliction(X, N)) == u`` and so on.

Two independent algorithms compute ``!t``:

* :func:`bang_kernel_perm` walks the distinct rearrangements ``c`` of the
  row multiset ``a`` and sums ``prod_i t(c_i, b_i)`` against the sorted
  enumeration of the column multiset ``b``;
* :func:`bang_kernel_coeff` enumerates matching multisets ``c`` over
  ``X x Y`` with row margins ``a`` and sums ``(b!/c!) t^c``.

:func:`natural_kernel` computes the variant that fixes the enumeration of
``a`` and sums over rearrangements of ``b``; it differs from ``!t`` by the
factor ``a!/b!`` and is related to it by :func:`multinomial_iso`.

Truncation is by total degree and is exact: all maps are degree-graded,
so each truncated kernel is literally a submatrix of the untruncated one.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Sequence

from .errors import ShapeError
from .kernel import Kernel
from .scalar import ONE, ZERO, Scalar, scalar
from .space import (
    UNIT, ExpWeb, Multiset, Web, exp_web, flatten, product_web,
)

__all__ = [
    "bang", "bang_kernel_perm", "bang_kernel_coeff", "natural_kernel",
    "matching_multisets", "multinomial_iso", "dereliction", "storage",
    "weakening", "contraction", "mon_unit", "mon", "k_transform",
    "SeelyWeb", "seely_iso", "ALGORITHMS",
]

ALGORITHMS = ("perm", "coeff")


def _sparse_rows(t: Kernel) -> list[list[tuple[int, Scalar]]]:
    return [sorted(t.row(i).items()) for i in range(len(t.src))]


def bang_kernel_perm(t: Kernel, N: int) -> Kernel:
    """``!t`` on degrees ``<= N`` by rearrangement enumeration."""
    ex, ey = exp_web(t.src, N), exp_web(t.dst, N)
    trows = _sparse_rows(t)
    rows = {}
    for ai, a in enumerate(ex.atoms):
        counts = dict(a.entries)
        n = a.degree
        acc: dict[tuple, Scalar] = {}
        targets: list[int] = []

        # position i picks a source atom among the remaining ones (distinct
        # values only, so each rearrangement of a is produced once) and a
        # target index no smaller than the previous one (b in sorted order)
        def walk(i, lo, value):
            if i == n:
                key = tuple(targets)
                acc[key] = acc[key] + value if key in acc else value
                return
            for x in list(counts):
                if counts[x] == 0:
                    continue
                counts[x] -= 1
                for y, v in trows[x]:
                    if y < lo:
                        continue
                    targets.append(y)
                    walk(i + 1, y, value * v)
                    targets.pop()
                counts[x] += 1

        walk(0, 0, ONE)
        row = {}
        for seq, v in acc.items():
            if v != 0:
                row[ey.index[Multiset.of(seq)]] = v
        if row:
            rows[ai] = row
    return Kernel._from_rows(ex, ey, rows)


def _compositions(total: int, slots: Sequence[int]):
    """All ways to write ``total`` as an ordered sum over ``slots`` (as dicts)."""
    slots = list(slots)
    if not slots:
        if total == 0:
            yield {}
        return
    head, rest = slots[0], slots[1:]
    lo = 0 if rest else total
    for k in range(total, lo - 1, -1):
        for tail in _compositions(total - k, rest):
            out = {head: k} if k else {}
            out.update(tail)
            yield out


def bang_kernel_coeff(t: Kernel, N: int) -> Kernel:
    """``!t`` on degrees ``<= N`` by the matching-multiset coefficient formula."""
    ex, ey = exp_web(t.src, N), exp_web(t.dst, N)
    ny = len(t.dst)
    trows = [dict(t.row(i)) for i in range(len(t.src))]
    rows = {}
    for ai, a in enumerate(ex.atoms):
        # per source atom x, distribute its multiplicity over supp t(x, .)
        per_atom = [(x, m, list(_compositions(m, sorted(trows[x])))) for x, m in a.entries]
        acc: dict[Multiset, Scalar] = {}

        def walk(k, colsum, cfact, value):
            if k == len(per_atom):
                b = Multiset(colsum.items())
                contrib = value * Fraction(b.factorial(), cfact)
                acc[b] = acc[b] + contrib if b in acc else contrib
                return
            x, _, options = per_atom[k]
            for comp in options:
                v, cf = value, cfact
                nxt = dict(colsum)
                for y, c in comp.items():
                    for _ in range(c):
                        v = v * trows[x][y]
                    cf *= factorial(c)
                    nxt[y] = nxt.get(y, 0) + c
                walk(k + 1, nxt, cf, v)

        walk(0, {}, 1, ONE)
        row = {ey.index[b]: v for b, v in acc.items() if v != 0}
        if row:
            rows[ai] = row
    return Kernel._from_rows(ex, ey, rows)


def matching_multisets(a: Multiset, b: Multiset, x: Web, y: Web) -> list[Multiset]:
    """All multisets over ``X x Y`` with row margins ``a`` and column margins ``b``.

    Indices refer to ``product_web(x, y)``; the order is deterministic.
    """
    if a.degree != b.degree:
        return []
    ny = len(y)
    rows = list(a.entries)
    out = []

    def fill(r, remaining: dict, cells: list):
        if r == len(rows):
            if all(v == 0 for v in remaining.values()):
                out.append(Multiset(cells))
            return
        xi, m = rows[r]
        cols = [j for j, v in sorted(remaining.items()) if v > 0]
        for comp in _compositions(m, cols):
            if any(c > remaining[j] for j, c in comp.items()):
                continue
            nxt = dict(remaining)
            for j, c in comp.items():
                nxt[j] -= c
            fill(r + 1, nxt, cells + [(xi * ny + j, c) for j, c in comp.items()])

    fill(0, dict(b.entries), [])
    return out


def natural_kernel(t: Kernel, N: int) -> Kernel:
    """The exponential that keeps ``a`` in sorted order and rearranges ``b``.

    ``natural(t)[a, b] = sum over target sequences d with multiset b of
    prod_i t(a_i, d_i)``, equal to ``(a!/b!) * (!t)[a, b]``.
    """
    ex, ey = exp_web(t.src, N), exp_web(t.dst, N)
    trows = _sparse_rows(t)
    rows = {}
    for ai, a in enumerate(ex.atoms):
        # dynamic programme over positions; states are partial target multisets
        states: dict[tuple, Scalar] = {(): ONE}
        for x in a.elements():
            nxt: dict[tuple, Scalar] = {}
            for key, val in states.items():
                for y, v in trows[x]:
                    k2 = tuple(sorted(key + (y,)))
                    w = val * v
                    nxt[k2] = nxt[k2] + w if k2 in nxt else w
            states = nxt
        row = {ey.index[Multiset.of(k)]: v for k, v in states.items() if v != 0}
        if row:
            rows[ai] = row
    return Kernel._from_rows(ex, ey, rows)


def bang(t: Kernel, N: int, algorithm: str = "perm") -> Kernel:
    """``!t`` truncated to degree ``N`` using the chosen algorithm."""
    if algorithm == "perm":
        return bang_kernel_perm(t, N)
    if algorithm == "coeff":
        return bang_kernel_coeff(t, N)
    raise ValueError(f"unknown algorithm {algorithm!r} (expected one of {ALGORITHMS})")


def multinomial_iso(e: ExpWeb) -> Kernel:
    """Diagonal kernel with ``n!/prod a(x)!`` at ``(a, a)``."""
    return Kernel._from_rows(e, e, {i: {i: scalar(m.multinomial())} for i, m in enumerate(e.atoms)})


# -- structure maps ----------------------------------------------------------

def dereliction(x: Web, N: int) -> Kernel:
    """``d: X_e -> X`` with ``d([x], x) = 1``."""
    if N < 1:
        raise ValueError("dereliction needs N >= 1")
    e = exp_web(x, N)
    return Kernel._from_rows(e, x, {e.index[Multiset(((i, 1),))]: {i: ONE} for i in range(len(x))})


def storage(x: Web, N: int, M: int) -> Kernel:
    """``s: X_e -> (X_e)_e`` with ``s(a, Y) = 1`` iff the union of ``Y`` is ``a``.

    The target is ``exp_web(exp_web(x, N), M)``.  Columns whose union has
    degree above ``N`` have no source row in the truncation and stay empty.
    """
    inner = exp_web(x, N)
    outer = exp_web(inner, M)
    rows: dict[int, dict] = {}
    for j, mm in enumerate(outer.atoms):
        a = flatten(mm, inner)
        i = inner.get(a)
        if i is not None:
            rows.setdefault(i, {})[j] = ONE
    return Kernel._from_rows(inner, outer, rows)


def weakening(x: Web, N: int) -> Kernel:
    """``w: X_e -> I`` picking out the empty multiset."""
    e = exp_web(x, N)
    return Kernel._from_rows(e, UNIT, {0: {0: ONE}})


def contraction(x: Web, N: int) -> Kernel:
    """``c: X_e -> X_e x X_e`` with ``c(a, (x1, x2)) = 1`` iff ``x1 + x2 = a``."""
    e = exp_web(x, N)
    p = product_web(e, e)
    n = len(e)
    rows: dict[int, dict] = {}
    for i1, m1 in enumerate(e.atoms):
        for i2 in range(n):
            m2 = e.atoms[i2]
            if m1.degree + m2.degree > N:
                break
            rows.setdefault(e.index[m1 + m2], {})[i1 * n + i2] = ONE
    return Kernel._from_rows(e, p, rows)


def mon_unit(N: int, literal: bool = False) -> Kernel:
    """``m_I: I -> I_e``.

    By default every entry is 1, which is ``k`` of the unit point and the
    choice that makes ``(I, m_I)`` a coalgebra.  ``literal=True`` gives the
    variant with ``m_I(*, *^n) = min(n, 1)``, which vanishes at the empty
    multiset; it is kept for comparison and fails the coalgebra laws.
    """
    e = exp_web(UNIT, N)
    row = {j: (ONE if (not literal or m.degree >= 1) else ZERO) for j, m in enumerate(e.atoms)}
    return Kernel(UNIT, e, ((0, j, v) for j, v in row.items()))


def mon(x: Web, y: Web, N: int) -> Kernel:
    """``m: X_e x Y_e -> (X x Y)_e`` sending ``(a, b)`` to every ``c`` projecting onto them."""
    ex, ey = exp_web(x, N), exp_web(y, N)
    xy = product_web(x, y)
    exy = exp_web(xy, N)
    nyy, ny = len(ey), len(y)
    rows: dict[int, dict] = {}
    for j, c in enumerate(exy.atoms):
        left: dict[int, int] = {}
        right: dict[int, int] = {}
        for p, k in c.entries:
            i1, i2 = divmod(p, ny)
            left[i1] = left.get(i1, 0) + k
            right[i2] = right.get(i2, 0) + k
        i = ex.index[Multiset(left.items())] * nyy + ey.index[Multiset(right.items())]
        rows.setdefault(i, {})[j] = ONE
    return Kernel._from_rows(product_web(ex, ey), exy, rows)


def k_transform(u: Sequence[Scalar], N: int) -> tuple:
    """``k(u)(a) = prod_x u(x)^a(x)`` over multisets of degree ``<= N``.

    The result is ordered like ``exp_web(X, N)`` for any web ``X`` with
    ``len(u)`` atoms.
    """
    u = tuple(scalar(v) for v in u)
    out = []
    for n in range(N + 1):
        if not u and n:
            break
        for combo in combinations_with_replacement(range(len(u)), n):
            v = ONE
            for i in combo:
                v = v * u[i]
                if v == 0:
                    break
            out.append(v)
    return tuple(out)


# -- Seely ---------------------------------------------------------------------

class SeelyWeb(Web):
    """Pairs ``(a, b)`` of ``exp_web(X, N) x exp_web(Y, N)`` with ``deg a + deg b <= N``."""

    def __init__(self, x: Web, y: Web, N: int):
        self.x, self.y, self.N = x, y, N
        self.ex, self.ey = exp_web(x, N), exp_web(y, N)
        atoms = [(a, b) for a in self.ex.atoms for b in self.ey.atoms if a.degree + b.degree <= N]
        super().__init__(atoms)

    def _make_label(self, i):
        a, b = self.atoms[i]
        return f"({self.ex.label(self.ex.index[a])},{self.ey.label(self.ey.index[b])})"

    def _key(self):
        return (self.x, self.y, self.N)


def seely_iso(x: Web, y: Web, N: int) -> Kernel:
    """Bijection ``(X + Y)_e -> SeelyWeb`` splitting a multiset into its two sides."""
    from .space import coproduct_web

    src = exp_web(coproduct_web(x, y), N)
    dst = SeelyWeb(x, y, N)
    nx = len(x)
    rows = {}
    for i, z in enumerate(src.atoms):
        left = Multiset(tuple((p, k) for p, k in z.entries if p < nx))
        right = Multiset(tuple((p - nx, k) for p, k in z.entries if p >= nx))
        rows[i] = {dst.index[(left, right)]: ONE}
    return Kernel._from_rows(src, dst, rows)
