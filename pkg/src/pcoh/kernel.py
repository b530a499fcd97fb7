"""Transition matrices between finite webs.

``Kernel(src, dst, entries)`` stores ``entry(x, y) = kappa(x, {y})`` sparsely,
row by row.  Composition is diagrammatic: ``compose(k, i)`` (also
``k >> i``) is the matrix product ``k . i``, first ``k`` then ``i``.

A vector over a web doubles as a point ``I -> X`` (a row, pushed forward
by :func:`push`) or a copoint ``X -> I`` (a column, pulled back by
:func:`pull`).
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import ShapeError
from .scalar import INF, ONE, ZERO, Scalar, scalar, star
from .space import (
    EMPTY, UNIT, ProductWeb, SumWeb, Web, coproduct_web, product_web,
)

__all__ = [
    "Kernel", "identity", "zero", "compose", "dagger", "tensor", "msum",
    "biproduct_maps", "pairing", "copairing", "kleene_star", "trace",
    "trace_blocks", "submatrix", "symmetry", "associator", "left_unitor",
    "right_unitor", "compact_unit", "compact_counit", "curry", "uncurry",
    "from_function", "push", "pull", "point", "copoint", "vector_of_point",
    "tensor_vectors", "scale",
]


class Kernel:
    """An immutable sparse matrix over ``Scalar`` with source and target webs."""

    __slots__ = ("src", "dst", "_rows")

    def __init__(self, src: Web, dst: Web, entries=None):
        self.src, self.dst = src, dst
        rows: dict[int, dict[int, Scalar]] = {}
        if entries is None:
            entries = ()
        elif isinstance(entries, Mapping):
            entries = ((i, j, v) for (i, j), v in entries.items())
        ns, nd = len(src), len(dst)
        for i, j, v in entries:
            if not (0 <= i < ns and 0 <= j < nd):
                raise ShapeError(f"entry ({i}, {j}) outside a {ns}x{nd} matrix")
            v = scalar(v)
            if v == 0:
                continue
            row = rows.setdefault(i, {})
            row[j] = row.get(j, ZERO) + v
        self._rows = rows

    @classmethod
    def _from_rows(cls, src: Web, dst: Web, rows: dict) -> "Kernel":
        k = object.__new__(cls)
        k.src, k.dst = src, dst
        k._rows = {i: r for i, r in rows.items() if r}
        return k

    @classmethod
    def from_dense(cls, src: Web, dst: Web, matrix: Sequence[Sequence]) -> "Kernel":
        if len(matrix) != len(src) or any(len(r) != len(dst) for r in matrix):
            raise ShapeError("dense matrix does not match the webs")
        return cls(src, dst, ((i, j, v) for i, r in enumerate(matrix) for j, v in enumerate(r)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.src), len(self.dst)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self._rows.get(i, {}).get(j, ZERO)

    def entry(self, x, y) -> Scalar:
        """Entry addressed by atoms rather than indices."""
        return self[self.src.position(x), self.dst.position(y)]

    def row(self, i: int) -> dict[int, Scalar]:
        return self._rows.get(i, {})

    def rows(self):
        return self._rows.items()

    def items(self):
        """``((i, j), value)`` for every nonzero entry, in index order."""
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def to_dense(self) -> list[list[Scalar]]:
        out = [[ZERO] * len(self.dst) for _ in self.src]
        for (i, j), v in self.items():
            out[i][j] = v
        return out

    def restrict(self, rows=None, cols=None) -> dict:
        """Entries on a sub-block as a plain ``{(i, j): v}`` dict (zeros omitted)."""
        rs = None if rows is None else set(rows)
        cs = None if cols is None else set(cols)
        return {(i, j): v for (i, j), v in self.items()
                if (rs is None or i in rs) and (cs is None or j in cs)}

    def then(self, other: "Kernel") -> "Kernel":
        return compose(self, other)

    __rshift__ = then

    def __add__(self, other: "Kernel") -> "Kernel":
        return msum([self, other])

    def __eq__(self, other):
        if not isinstance(other, Kernel):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        return f"Kernel({len(self.src)}x{len(self.dst)}, nnz={self.nnz()})"


def _check(cond: bool, msg: str):
    if not cond:
        raise ShapeError(msg)


def identity(x: Web) -> Kernel:
    return Kernel._from_rows(x, x, {i: {i: ONE} for i in range(len(x))})


def zero(x: Web, y: Web) -> Kernel:
    return Kernel._from_rows(x, y, {})


def from_function(src: Web, dst: Web, f) -> Kernel:
    """0/1 kernel sending atom index ``i`` to ``f(i)`` (skipped when ``None``)."""
    rows = {}
    for i in range(len(src)):
        j = f(i)
        if j is not None:
            rows[i] = {j: ONE}
    return Kernel._from_rows(src, dst, rows)


def compose(k: Kernel, i: Kernel) -> Kernel:
    """``entry(x, z) = sum_y k(x, y) i(y, z)``."""
    _check(k.dst == i.src, "compose: target of the first kernel is not the source of the second")
    irows = i._rows
    out = {}
    for x, row in k._rows.items():
        acc: dict[int, Scalar] = {}
        for y, v in row.items():
            r2 = irows.get(y)
            if not r2:
                continue
            for z, w in r2.items():
                p = v * w
                acc[z] = acc[z] + p if z in acc else p
        if acc:
            out[x] = acc
    return Kernel._from_rows(k.src, i.dst, out)


def dagger(k: Kernel) -> Kernel:
    """Transpose."""
    out: dict[int, dict] = {}
    for i, row in k._rows.items():
        for j, v in row.items():
            out.setdefault(j, {})[i] = v
    return Kernel._from_rows(k.dst, k.src, out)


def tensor(k1: Kernel, k2: Kernel) -> Kernel:
    """``entry((x1, x2), (y1, y2)) = k1(x1, y1) k2(x2, y2)`` over product webs."""
    src, dst = product_web(k1.src, k2.src), product_web(k1.dst, k2.dst)
    n2s, n2d = len(k2.src), len(k2.dst)
    out = {}
    for i1, r1 in k1._rows.items():
        for i2, r2 in k2._rows.items():
            row = {}
            for j1, v1 in r1.items():
                base = j1 * n2d
                for j2, v2 in r2.items():
                    row[base + j2] = v1 * v2
            out[i1 * n2s + i2] = row
    return Kernel._from_rows(src, dst, out)


def scale(c: Scalar, k: Kernel) -> Kernel:
    c = scalar(c)
    if c == 0:
        return zero(k.src, k.dst)
    return Kernel._from_rows(k.src, k.dst,
                             {i: {j: c * v for j, v in r.items()} for i, r in k._rows.items()})


def msum(ks: Sequence[Kernel], src: Web | None = None, dst: Web | None = None) -> Kernel:
    """Entrywise sum of kernels with equal shapes (the zero kernel when empty)."""
    ks = list(ks)
    if not ks:
        _check(src is not None and dst is not None, "msum of nothing needs explicit webs")
        return zero(src, dst)
    s, d = ks[0].src, ks[0].dst
    out: dict[int, dict] = {}
    for k in ks:
        _check(k.src == s and k.dst == d, "msum: kernels of different shapes")
        for i, row in k._rows.items():
            acc = out.setdefault(i, {})
            for j, v in row.items():
                acc[j] = acc[j] + v if j in acc else v
    return Kernel._from_rows(s, d, out)


def biproduct_maps(x: Web, y: Web) -> dict[str, Kernel]:
    """Injections ``X -> X+Y``, ``Y -> X+Y`` and projections back."""
    s = coproduct_web(x, y)
    n = len(x)
    inj_x = from_function(x, s, lambda i: i)
    inj_y = from_function(y, s, lambda i: i + n)
    return {"inj_x": inj_x, "inj_y": inj_y, "proj_x": dagger(inj_x), "proj_y": dagger(inj_y)}


def pairing(f: Kernel, g: Kernel) -> Kernel:
    """``[f, g]: X+Y -> Z`` stacking the rows of ``f: X -> Z`` over those of ``g: Y -> Z``."""
    _check(f.dst == g.dst, "pairing: kernels must share their target")
    n = len(f.src)
    rows = dict(f._rows)
    rows.update({i + n: r for i, r in g._rows.items()})
    return Kernel._from_rows(coproduct_web(f.src, g.src), f.dst, rows)


def copairing(f: Kernel, g: Kernel) -> Kernel:
    """``<f, g>: Z -> X+Y`` placing the columns of ``f: Z -> X`` before those of ``g: Z -> Y``."""
    _check(f.src == g.src, "copairing: kernels must share their source")
    n = len(f.dst)
    rows: dict[int, dict] = {i: dict(r) for i, r in f._rows.items()}
    for i, r in g._rows.items():
        rows.setdefault(i, {}).update({j + n: v for j, v in r.items()})
    return Kernel._from_rows(f.src, coproduct_web(f.dst, g.dst), rows)


def submatrix(k: Kernel, rows: Sequence[int], cols: Sequence[int], src: Web, dst: Web) -> Kernel:
    """The block of ``k`` on the given row/column indices, relabelled onto ``src``/``dst``."""
    _check(len(rows) == len(src) and len(cols) == len(dst), "submatrix: webs do not match block")
    cpos = {c: j for j, c in enumerate(cols)}
    out = {}
    for a, r in enumerate(rows):
        row = {cpos[c]: v for c, v in k.row(r).items() if c in cpos}
        if row:
            out[a] = row
    return Kernel._from_rows(src, dst, out)


def kleene_star(k: Kernel) -> Kernel:
    """``sum_{n >= 0} k^n`` by algebraic-path elimination over the scalar star.

    Divergent entries come out as ``INF``.
    """
    _check(k.src == k.dst, "kleene_star needs a square kernel")
    n = len(k.src)
    a = k.to_dense()
    for p in range(n):
        s = star(a[p][p])
        prev = [r[:] for r in a]
        for i in range(n):
            aip = prev[i][p]
            if aip == 0:
                continue
            left = aip * s
            for j in range(n):
                apj = prev[p][j]
                if apj == 0:
                    continue
                a[i][j] = prev[i][j] + left * apj
    for i in range(n):
        a[i][i] = a[i][i] + ONE
    return Kernel.from_dense(k.src, k.dst, a)


def trace_blocks(xy: Kernel, xz: Kernel, zz: Kernel, zy: Kernel) -> Kernel:
    """Execution formula ``xy + xz . zz* . zy``."""
    return msum([xy, compose(compose(xz, kleene_star(zz)), zy)])


def trace(k: Kernel) -> Kernel:
    """Feedback over ``Z`` of ``k: X+Z -> Y+Z``."""
    _check(isinstance(k.src, SumWeb) and isinstance(k.dst, SumWeb),
           "trace needs coproduct webs on both sides")
    x, z = k.src.left, k.src.right
    y, z2 = k.dst.left, k.dst.right
    _check(z == z2, "trace: the looped summands differ")
    nx, ny, nz = len(x), len(y), len(z)
    xs, zs_src = range(nx), range(nx, nx + nz)
    ys, zs_dst = range(ny), range(ny, ny + nz)
    return trace_blocks(submatrix(k, xs, ys, x, y), submatrix(k, xs, zs_dst, x, z),
                        submatrix(k, zs_src, zs_dst, z, z), submatrix(k, zs_src, ys, z, y))


def symmetry(x: Web, y: Web) -> Kernel:
    """``X x Y -> Y x X``, ``(a, b) |-> (b, a)``."""
    nx, ny = len(x), len(y)
    return from_function(product_web(x, y), product_web(y, x),
                         lambda p: (p % ny) * nx + p // ny)


def associator(x: Web, y: Web, z: Web) -> Kernel:
    """``(X x Y) x Z -> X x (Y x Z)``."""
    ny, nz = len(y), len(z)
    src = product_web(product_web(x, y), z)
    dst = product_web(x, product_web(y, z))
    # both sides enumerate (a, b, c) in the same lexicographic order
    return from_function(src, dst, lambda p: p)


def left_unitor(x: Web) -> Kernel:
    """``I x X -> X``."""
    return from_function(product_web(UNIT, x), x, lambda p: p)


def right_unitor(x: Web) -> Kernel:
    """``X x I -> X``."""
    return from_function(product_web(x, UNIT), x, lambda p: p)


def compact_unit(x: Web) -> Kernel:
    """``phi: I -> X x X`` with ``phi(*, (a, b)) = [a == b]``."""
    n = len(x)
    return Kernel._from_rows(UNIT, product_web(x, x), {0: {i * n + i: ONE for i in range(n)}})


def compact_counit(x: Web) -> Kernel:
    """``psi: X x X -> I``, the transpose of the unit."""
    return dagger(compact_unit(x))


def curry(k: Kernel, x: Web, y: Web) -> Kernel:
    """``k: X x Y -> Z`` to ``X -> Z x Y`` through the compact unit on ``Y``."""
    _check(k.src == product_web(x, y), "curry: source is not X x Y")
    z = k.dst
    step1 = compose(dagger(right_unitor(x)), tensor(identity(x), compact_unit(y)))
    step2 = compose(step1, dagger(associator(x, y, y)))
    return compose(step2, tensor(k, identity(y)))


def uncurry(k: Kernel, y: Web) -> Kernel:
    """``k: X -> Z x Y`` back to ``X x Y -> Z`` through the compact counit on ``Y``."""
    _check(isinstance(k.dst, ProductWeb) and k.dst.right == y, "uncurry: target is not Z x Y")
    x, z = k.src, k.dst.left
    step1 = compose(tensor(k, identity(y)), associator(z, y, y))
    step2 = compose(step1, tensor(identity(z), compact_counit(y)))
    return compose(step2, right_unitor(z))


# -- vectors ---------------------------------------------------------------

def _vec(v, n: int, what: str) -> tuple:
    v = tuple(scalar(a) for a in v)
    _check(len(v) == n, f"{what}: vector of length {len(v)} over a web of {n} atoms")
    return v


def push(v: Sequence[Scalar], k: Kernel) -> tuple:
    """Row action ``(v k)(y) = sum_x v(x) k(x, y)``: a point pushed along ``k``."""
    v = _vec(v, len(k.src), "push")
    out = [ZERO] * len(k.dst)
    for i, row in k._rows.items():
        a = v[i]
        if a == 0:
            continue
        for j, w in row.items():
            out[j] = out[j] + a * w
    return tuple(out)


def pull(k: Kernel, f: Sequence[Scalar]) -> tuple:
    """Column action ``(k f)(x) = sum_y k(x, y) f(y)``: a copoint pulled back along ``k``."""
    f = _vec(f, len(k.dst), "pull")
    out = []
    for i in range(len(k.src)):
        acc = ZERO
        for j, w in k.row(i).items():
            b = f[j]
            if b != 0:
                acc = acc + w * b
        out.append(acc)
    return tuple(out)


def point(v: Sequence[Scalar], x: Web) -> Kernel:
    """The kernel ``I -> X`` whose single row is ``v``."""
    v = _vec(v, len(x), "point")
    return Kernel(UNIT, x, ((0, j, a) for j, a in enumerate(v)))


def copoint(v: Sequence[Scalar], x: Web) -> Kernel:
    """The kernel ``X -> I`` whose single column is ``v``."""
    return dagger(point(v, x))


def vector_of_point(k: Kernel) -> tuple:
    _check(len(k.src) == 1, "not a point: source must be a singleton")
    return tuple(k[0, j] for j in range(len(k.dst)))


def tensor_vectors(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    """Row-major ``(u (x) v)(a, b) = u(a) v(b)``."""
    return tuple(a * b for a in u for b in v)
