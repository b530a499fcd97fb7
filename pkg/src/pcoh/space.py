"""Finite webs and their constructions.

A :class:`Web` is an ordered finite set of atoms; every subset is
measurable, so no sigma-field is stored.  The order of ``atoms`` fixes the
row/column layout of every matrix over the web.

Structured webs remember how they were built (:class:`SumWeb`,
:class:`ProductWeb`, :class:`ExpWeb`) and compare structurally, so the
exponential of a two-atom web is never confused with the exponential of a
different two-atom web even though both have the same multiset atoms.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .errors import DegreeOverflowError, ParseError, ResourceError, ShapeError

__all__ = [
    "Web", "SumWeb", "ProductWeb", "ExpWeb", "Multiset", "UNIT", "EMPTY",
    "web", "exp_web", "coproduct_web", "product_web", "counting", "flatten",
    "multiset_label", "parse_multiset_label", "DEFAULT_SIZE_BOUND",
]

DEFAULT_SIZE_BOUND = 250_000


class Web:
    """An ordered finite set of atoms with string labels.

    Plain webs use their labels as atoms.  ``index`` maps an atom to its
    position.
    """

    def __init__(self, atoms: Iterable, labels: Sequence[str] | None = None):
        self.atoms = tuple(atoms)
        self.index = {a: i for i, a in enumerate(self.atoms)}
        if len(self.index) != len(self.atoms):
            raise ShapeError("web atoms must be pairwise distinct")
        self._labels = tuple(labels) if labels is not None else None
        if self._labels is not None and len(self._labels) != len(self.atoms):
            raise ShapeError("one label per atom")
        self._hash = None

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            labels = tuple(self._make_label(i) for i in range(len(self.atoms)))
            if len(set(labels)) != len(labels):
                raise ShapeError("web labels are not distinct")
            self._labels = labels
        return self._labels

    def _make_label(self, i: int) -> str:
        return str(self.atoms[i])

    def label(self, i: int) -> str:
        return self.labels[i]

    def position(self, atom) -> int:
        try:
            return self.index[atom]
        except KeyError:
            raise ShapeError(f"{atom!r} is not an atom of this web") from None

    def _key(self):
        return self.atoms

    def __len__(self):
        return len(self.atoms)

    def __iter__(self) -> Iterator:
        return iter(self.atoms)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Web) or type(self) is not type(other):
            return NotImplemented if not isinstance(other, Web) else False
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._key()))
        return self._hash

    def same_labels(self, other: "Web") -> bool:
        return self.labels == other.labels

    def __repr__(self):
        shown = ", ".join(self.labels[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"Web([{shown}{more}])"


def web(*labels: str) -> Web:
    """Build a plain web from labels: ``web("a", "b")``."""
    if len(labels) == 1 and not isinstance(labels[0], str):
        labels = tuple(labels[0])
    return Web(labels)


UNIT = Web(("*",))
EMPTY = Web(())


class SumWeb(Web):
    """Tagged disjoint union: ``inl`` atoms of ``left`` then ``inr`` atoms of ``right``."""

    def __init__(self, left: Web, right: Web):
        self.left, self.right = left, right
        atoms = [("inl", a) for a in left.atoms] + [("inr", b) for b in right.atoms]
        super().__init__(atoms)

    def _make_label(self, i):
        n = len(self.left)
        if i < n:
            return "inl." + self.left.label(i)
        return "inr." + self.right.label(i - n)

    def _key(self):
        return (self.left, self.right)


class ProductWeb(Web):
    """Pairs ``(x, y)`` in row-major order (``x`` varies slowest)."""

    def __init__(self, left: Web, right: Web):
        self.left, self.right = left, right
        atoms = [(x, y) for x in left.atoms for y in right.atoms]
        super().__init__(atoms)

    def _make_label(self, i):
        n = len(self.right)
        return f"({self.left.label(i // n)},{self.right.label(i % n)})"

    def pair_index(self, i: int, j: int) -> int:
        return i * len(self.right) + j

    def split_index(self, p: int) -> tuple[int, int]:
        return divmod(p, len(self.right))

    def _key(self):
        return (self.left, self.right)


def coproduct_web(x: Web, y: Web) -> SumWeb:
    return SumWeb(x, y)


def product_web(x: Web, y: Web) -> ProductWeb:
    return _product_web(x, y)


@lru_cache(maxsize=512)
def _product_web(x, y):
    return ProductWeb(x, y)


class Multiset:
    """A finite multiset of atom indices, stored as sorted ``(index, multiplicity)`` pairs."""

    __slots__ = ("entries", "degree", "_hash")

    def __init__(self, entries: Iterable[tuple[int, int]] = ()):
        merged: dict[int, int] = {}
        for i, m in entries:
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                merged[i] = merged.get(i, 0) + m
        self.entries = tuple(sorted(merged.items()))
        self.degree = sum(merged.values())
        self._hash = hash(self.entries)

    @classmethod
    def of(cls, elements: Iterable[int]) -> "Multiset":
        counts: dict[int, int] = {}
        for e in elements:
            counts[e] = counts.get(e, 0) + 1
        return cls(counts.items())

    @classmethod
    def _trusted(cls, entries: tuple, degree: int) -> "Multiset":
        m = object.__new__(cls)
        m.entries, m.degree, m._hash = entries, degree, hash(entries)
        return m

    def elements(self) -> tuple[int, ...]:
        """The sorted enumeration ``a_1 <= ... <= a_n`` with repetitions."""
        out = []
        for i, m in self.entries:
            out.extend([i] * m)
        return tuple(out)

    def multiplicity(self, i: int) -> int:
        for j, m in self.entries:
            if j == i:
                return m
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def factorial(self) -> int:
        """``prod_a m(a)!``, the order of the stabiliser of an enumeration."""
        out = 1
        for _, m in self.entries:
            out *= factorial(m)
        return out

    def multinomial(self) -> int:
        """Number of distinct enumerations: ``n! / prod m(a)!``."""
        return factorial(self.degree) // self.factorial()

    def __add__(self, other: "Multiset") -> "Multiset":
        return Multiset(self.entries + other.entries)

    def __eq__(self, other):
        return isinstance(other, Multiset) and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __len__(self):
        return self.degree

    def __repr__(self):
        return f"Multiset({list(self.entries)})"


def counting(subset: Iterable[int], m: Multiset) -> int:
    """Number of elements of ``m``, with multiplicity, whose atom lies in ``subset``."""
    s = set(subset)
    return sum(k for i, k in m.entries if i in s)


def multiset_label(m: Multiset, labels: Sequence[str]) -> str:
    parts = [labels[i] if k == 1 else f"{labels[i]}*{k}" for i, k in m.entries]
    return "[" + ",".join(parts) + "]"


def _split_top(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {body!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced brackets in {body!r}")
    parts.append("".join(cur))
    return parts


def parse_multiset_label(text: str, base: Web) -> Multiset:
    """Inverse of :func:`multiset_label` relative to the base web's labels."""
    s = text.strip()
    if len(s) < 2 or s[0] != "[" or s[-1] != "]":
        raise ParseError(f"not a multiset label: {text!r}")
    body = s[1:-1]
    if not body:
        return Multiset()
    lookup = {lab: i for i, lab in enumerate(base.labels)}
    counts = []
    for piece in _split_top(body):
        head, star, tail = piece.rpartition("*")
        if star and tail.isdigit() and head in lookup:
            counts.append((lookup[head], int(tail)))
        elif piece in lookup:
            counts.append((lookup[piece], 1))
        else:
            raise ParseError(f"unknown atom {piece!r} in {text!r}")
    return Multiset(counts)


class ExpWeb(Web):
    """All multisets over ``base`` of degree at most ``max_degree``.

    Atoms are ordered by degree, then lexicographically on the sorted
    element sequence (equivalently, descending exponent vectors), so the
    first atoms over ``{a, b}`` are ``[], [a], [b], [a,a], [a,b], [b,b]``.
    """

    def __init__(self, base: Web, max_degree: int, size_bound: int = DEFAULT_SIZE_BOUND):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        k = len(base)
        total = sum(comb(n + k - 1, n) for n in range(max_degree + 1)) if k else 1
        if total > size_bound:
            raise ResourceError(
                f"exponential web of {k} atoms to degree {max_degree} has {total} atoms "
                f"(bound {size_bound})")
        self.base, self.max_degree = base, max_degree
        atoms, starts = [], []
        for n in range(max_degree + 1):
            starts.append(len(atoms))
            if k == 0 and n > 0:
                continue
            for combo in combinations_with_replacement(range(k), n):
                atoms.append(Multiset.of(combo))
        starts.append(len(atoms))
        self._grade_starts = starts
        super().__init__(atoms)

    def _make_label(self, i):
        return multiset_label(self.atoms[i], self.base.labels)

    def _key(self):
        return (self.base, self.max_degree)

    def grade(self, n: int) -> range:
        """Indices of the atoms of degree ``n``."""
        if n < 0 or n > self.max_degree:
            return range(0)
        return range(self._grade_starts[n], self._grade_starts[n + 1])

    def position(self, m: Multiset) -> int:
        if m.degree > self.max_degree:
            raise DegreeOverflowError(
                f"degree {m.degree} exceeds truncation {self.max_degree}")
        return super().position(m)

    def get(self, m: Multiset):
        """Position of ``m`` or ``None`` when it lies beyond the truncation."""
        return self.index.get(m)

    def parse_label(self, text: str) -> Multiset:
        return parse_multiset_label(text, self.base)

    def __repr__(self):
        return f"ExpWeb({self.base!r}, {self.max_degree})"


@lru_cache(maxsize=256)
def exp_web(base: Web, max_degree: int) -> ExpWeb:
    """The degree-truncated exponential web (cached per ``(base, max_degree)``)."""
    return ExpWeb(base, max_degree)


def flatten(mm: Multiset, inner: ExpWeb) -> Multiset:
    """Union of the inner multisets of a multiset of multisets.

    ``mm`` indexes atoms of ``inner``; the result indexes atoms of
    ``inner.base``.
    """
    acc: dict[int, int] = {}
    for i, k in mm.entries:
        for a, m in inner.atoms[i].entries:
            acc[a] = acc.get(a, 0) + k * m
    entries = tuple(sorted(acc.items()))
    return Multiset._trusted(entries, sum(acc.values()))
