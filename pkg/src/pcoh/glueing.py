"""Double-glueing objects over finite webs, their connectives, and Pcoh.

A glue object is a web ``X`` with a set ``U`` of points (vectors read as
measures ``I -> X``) and a set ``R`` of copoints (vectors read as functions
``X -> I``).  A kernel ``k: X -> Y`` is a morphism ``(X, U, R) -> (Y, V, S)``
when it pushes every ``u`` in ``U`` into ``V`` and pulls every ``s`` in ``S``
back into ``R``.

Two modes are supported.

``exact``
    Components are taken literally.  A component is either a finite
    :class:`Points` list or a :class:`Defined` membership predicate; the
    latter arises for the third component of a tensor and the second of a
    par, which are defined by quantified conditions and never enumerated.

``bipolar``
    Components are bipolar closures of finite :class:`GenSet` generators;
    one component may be the sentinel :data:`POLAR`, meaning "the polar of
    the other one" (the tight situation).  Membership questions are LPs.

In bipolar mode a morphism check looks only at the generators of ``U``:
if ``k`` maps every ``u`` into ``V^oo`` and ``S = V^o``, then for ``s`` in
``S`` and ``u`` in ``U``, ``<u, k s> = <k_* u, s> <= 1``, so ``k s`` lies in
``U^o = R``.  :func:`is_glue_morphism_both` checks the two directions
separately.

The Pcoh layer (:class:`PcohObject`) is the tight bipolar case with a
single generator set ``P(X) = gens^oo``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .bang import contraction, dereliction, k_transform, weakening
from .duality import (
    GenSet, bipolar_equal, bipolar_member, bipolar_sup, inner, is_orthogonal,
    polar_vertices, sup_on_generators, tensor_gens,
)
from .errors import ModeError, ShapeError
from .kernel import Kernel, pull, push, tensor_vectors
from .lp import solve
from .scalar import INF, ONE, ZERO, Scalar, scalar
from .space import UNIT, Web, coproduct_web, exp_web, product_web

__all__ = [
    "Points", "Defined", "POLAR", "GlueObject", "PcohObject", "AtomReport",
    "PcohReport", "validate_pcoh", "dual", "g_tensor", "g_par", "g_with",
    "g_plus", "g_impl", "g_unit", "u_generators", "r_generators",
    "is_glue_morphism", "is_glue_morphism_both", "is_tight", "is_slack",
    "check_why_not_candidate", "pcoh_bang", "pcoh_is_morphism",
    "pcoh_morphism_report", "pcoh_tensor", "pcoh_with", "pcoh_plus",
    "pcoh_dual", "pcoh_unit", "as_glue",
]


# -- components ----------------------------------------------------------------

class Points:
    """A literal finite set of vectors over a web."""

    def __init__(self, web: Web, vectors: Sequence[Sequence] = ()):
        self.web = web
        gs = GenSet(web, vectors)
        seen, vs = set(), []
        for v in gs.gens:
            if v not in seen:
                seen.add(v)
                vs.append(v)
        self.vectors = tuple(vs)
        self._set = seen

    def __contains__(self, v) -> bool:
        return tuple(scalar(a) for a in v) in self._set

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __eq__(self, other):
        return isinstance(other, Points) and self.web == other.web and self._set == other._set

    __hash__ = None

    def __repr__(self):
        return f"Points({len(self.vectors)})"


class Defined:
    """A set given only by a membership predicate."""

    def __init__(self, web: Web, predicate: Callable[[tuple], bool], description: str = ""):
        self.web, self.predicate, self.description = web, predicate, description

    def __contains__(self, v) -> bool:
        return bool(self.predicate(tuple(scalar(a) for a in v)))

    def __repr__(self):
        return f"Defined({self.description or 'predicate'})"


class _Polar:
    """Sentinel: this component is the polar of the other one."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = object.__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLAR"


POLAR = _Polar()

Component = Union[Points, Defined, GenSet, _Polar]


@dataclass(frozen=True, eq=False)
class GlueObject:
    web: Web
    U: Component
    R: Component
    mode: str = "bipolar"

    def __post_init__(self):
        if self.mode == "exact":
            for c in (self.U, self.R):
                if not isinstance(c, (Points, Defined)):
                    raise ModeError("exact-mode components are Points or Defined sets")
        elif self.mode == "bipolar":
            for c in (self.U, self.R):
                if not isinstance(c, (GenSet, _Polar)):
                    raise ModeError("bipolar-mode components are GenSets or POLAR")
            if self.U is POLAR and self.R is POLAR:
                raise ModeError("at most one component may be the polar of the other")
        else:
            raise ModeError(f"unknown mode {self.mode!r}")
        for c in (self.U, self.R):
            if hasattr(c, "web") and c.web != self.web:
                raise ShapeError("component over a different web")


def _components_equal(a, b) -> bool:
    if a is b:
        return True
    if isinstance(a, (GenSet, Points)):
        return a == b
    return False


def structurally_equal(A: GlueObject, B: GlueObject) -> bool:
    """Same web, mode and generator data (predicates compare by identity)."""
    return (A.web == B.web and A.mode == B.mode
            and _components_equal(A.U, B.U) and _components_equal(A.R, B.R))


__all__.append("structurally_equal")


def u_generators(A: GlueObject) -> GenSet:
    """Generators of the second component (bipolar mode)."""
    _need_bipolar(A)
    return A.U if isinstance(A.U, GenSet) else polar_vertices(A.R)


def r_generators(A: GlueObject) -> GenSet:
    """Generators of the third component (bipolar mode)."""
    _need_bipolar(A)
    return A.R if isinstance(A.R, GenSet) else polar_vertices(A.U)


def _need_bipolar(A: GlueObject):
    if A.mode != "bipolar":
        raise ModeError("operation needs a bipolar-mode object")


def _same_mode(A: GlueObject, B: GlueObject) -> str:
    if A.mode != B.mode:
        raise ModeError(f"cannot combine {A.mode} and {B.mode} objects")
    return A.mode


def _enumerable(c, what: str):
    if isinstance(c, Points):
        return c.vectors
    raise ModeError(f"{what} is only given by a membership test and cannot be enumerated")


# -- connectives -----------------------------------------------------------------

def dual(A: GlueObject) -> GlueObject:
    """``(X, U, R)`` to ``(X, R, U)``."""
    return GlueObject(A.web, A.R, A.U, A.mode)


def g_unit(mode: str = "bipolar") -> GlueObject:
    """The tensor unit on the one-atom web with the point ``(1)``."""
    if mode == "bipolar":
        return GlueObject(UNIT, GenSet(UNIT, [(ONE,)]), POLAR, "bipolar")
    return GlueObject(UNIT, Points(UNIT, [(ONE,)]),
                      Defined(UNIT, lambda v: True, "all copoints"), "exact")


def _row_slice(h: tuple, i: int, n: int) -> tuple:
    return h[i * n:(i + 1) * n]


def _contract_left(u: tuple, h: tuple, ny: int) -> tuple:
    """``y |-> sum_x u(x) h(x, y)``."""
    out = [ZERO] * ny
    for x, a in enumerate(u):
        if a == 0:
            continue
        for y, b in enumerate(_row_slice(h, x, ny)):
            if b != 0:
                out[y] = out[y] + a * b
    return tuple(out)


def _contract_right(h: tuple, v: tuple, nx: int) -> tuple:
    """``x |-> sum_y h(x, y) v(y)``."""
    ny = len(v)
    return tuple(inner(_row_slice(h, x, ny), v) for x in range(nx))


def g_tensor(A: GlueObject, B: GlueObject) -> GlueObject:
    web = product_web(A.web, B.web)
    if _same_mode(A, B) == "bipolar":
        return GlueObject(web, tensor_gens(u_generators(A), u_generators(B)), POLAR, "bipolar")
    us, vs = _enumerable(A.U, "U"), _enumerable(B.U, "V")
    nx, ny = len(A.web), len(B.web)
    R, S = A.R, B.R

    def in_T(h):
        return (all(_contract_left(u, h, ny) in S for u in us)
                and all(_contract_right(h, v, nx) in R for v in vs))

    return GlueObject(web, Points(web, [tensor_vectors(u, v) for u in us for v in vs]),
                      Defined(web, in_T, "tensor copoints"), "exact")


def g_par(A: GlueObject, B: GlueObject) -> GlueObject:
    web = product_web(A.web, B.web)
    if _same_mode(A, B) == "bipolar":
        return GlueObject(web, POLAR, tensor_gens(r_generators(A), r_generators(B)), "bipolar")
    rs, ss = _enumerable(A.R, "R"), _enumerable(B.R, "S")
    nx, ny = len(A.web), len(B.web)
    U, V = A.U, B.U

    def in_W(w):
        return (all(_contract_left(r, w, ny) in V for r in rs)
                and all(_contract_right(w, s, nx) in U for s in ss))

    return GlueObject(web, Defined(web, in_W, "par points"),
                      Points(web, [tensor_vectors(r, s) for r in rs for s in ss]), "exact")


def g_with(A: GlueObject, B: GlueObject) -> GlueObject:
    """Product: points are pairs ``(u, v)``, copoints are ``(r, 0)`` and ``(0, s)``."""
    web = coproduct_web(A.web, B.web)
    nx, ny = len(A.web), len(B.web)
    zx, zy = (ZERO,) * nx, (ZERO,) * ny
    if _same_mode(A, B) == "bipolar":
        U = GenSet(web, [u + v for u in u_generators(A).gens for v in u_generators(B).gens])
        return GlueObject(web, U, POLAR, "bipolar")
    us, vs = _enumerable(A.U, "U"), _enumerable(B.U, "V")
    R, S = A.R, B.R
    if isinstance(R, Points) and isinstance(S, Points):
        cop = Points(web, [r + zy for r in R] + [zx + s for s in S])
    else:
        def in_cop(h):
            left, right = h[:nx], h[nx:]
            return (all(a == 0 for a in right) and left in R) or (all(a == 0 for a in left) and right in S)
        cop = Defined(web, in_cop, "with copoints")
    return GlueObject(web, Points(web, [u + v for u in us for v in vs]), cop, "exact")


def g_plus(A: GlueObject, B: GlueObject) -> GlueObject:
    """Coproduct: points are ``(u, 0)`` and ``(0, v)``, copoints are pairs ``(r, s)``."""
    return dual(g_with(dual(A), dual(B)))


def g_impl(A: GlueObject, B: GlueObject) -> GlueObject:
    """``A -o B = dual(A) par B``."""
    return g_par(dual(A), B)


# -- morphisms and orthogonality properties ------------------------------------

def _check_shape(k: Kernel, A: GlueObject, B: GlueObject):
    if k.src != A.web or k.dst != B.web:
        raise ShapeError("kernel does not go between the objects' webs")


def is_glue_morphism(k: Kernel, A: GlueObject, B: GlueObject) -> bool:
    """Whether ``k: A -> B`` preserves the glueing data.

    Exact mode checks both directions literally; bipolar mode checks the
    pushed ``U``-generators only (see the module docstring).
    """
    _check_shape(k, A, B)
    if _same_mode(A, B) == "exact":
        us, ss = _enumerable(A.U, "source points"), _enumerable(B.R, "target copoints")
        return (all(push(u, k) in B.U for u in us)
                and all(pull(k, s) in A.R for s in ss))
    V = u_generators(B)
    return all(bipolar_member(V, push(u, k)) for u in u_generators(A).gens)


def is_glue_morphism_both(k: Kernel, A: GlueObject, B: GlueObject) -> tuple[bool, bool]:
    """Bipolar mode: (points pushed into ``V^oo``, copoints pulled into ``R^oo``)."""
    _check_shape(k, A, B)
    _same_mode(A, B)
    _need_bipolar(A)
    V, R = u_generators(B), r_generators(A)
    forward = all(bipolar_member(V, push(u, k)) for u in u_generators(A).gens)
    backward = all(bipolar_member(R, pull(k, s)) for s in r_generators(B).gens)
    return forward, backward


def is_slack(A: GlueObject) -> bool:
    """``U`` inside the polar of ``R``: every point orthogonal to every copoint."""
    if A.mode == "exact":
        us, rs = _enumerable(A.U, "U"), _enumerable(A.R, "R")
    else:
        if A.U is POLAR or A.R is POLAR:
            return True
        us, rs = A.U.gens, A.R.gens
    return all(is_orthogonal(r, u) for u in us for r in rs)


def is_tight(A: GlueObject) -> bool:
    """``U^oo = R^o`` (and hence ``R^oo = U^o``)."""
    _need_bipolar(A)
    if A.U is POLAR or A.R is POLAR:
        return True
    if not is_slack(A):
        return False
    try:
        polar_r = polar_vertices(A.R)
    except ModeError:
        # an unbounded polar is never the bipolar of finitely many points
        return False
    return bipolar_equal(A.U, polar_r)


def check_why_not_candidate(A: GlueObject, N: int, candidate: Sequence[Sequence],
                            probes: Sequence[Sequence] = ()) -> dict:
    """Check a finite candidate for the copoints of the slack exponential.

    ``candidate`` lists copoints over ``exp_web(A.web, N)``; ``probes`` are
    copoints ``h`` over ``X_e x X_e``.  The clauses checked are:

    * ``derelictions``: ``mu`` precomposed with dereliction is in the
      candidate for every ``mu`` in ``R``;
    * ``weakening``: the weakening copoint is in the candidate;
    * ``contraction``: for every probe ``h`` whose partial applications to
      every ``k(u)`` (on either side) are in the candidate, ``h``
      precomposed with contraction is in the candidate.

    Works in exact mode (with enumerable ``U`` and ``R``) or bipolar mode
    (on generators).  Everything is computed within the degree truncation.
    """
    if A.mode == "exact":
        us, rs = _enumerable(A.U, "U"), _enumerable(A.R, "R")
    else:
        us, rs = u_generators(A).gens, r_generators(A).gens
    e = exp_web(A.web, N)
    cand = Points(e, candidate)
    d, w, c = dereliction(A.web, N), weakening(A.web, N), contraction(A.web, N)
    report = {"derelictions": [], "weakening": True, "contraction": []}
    for i, mu in enumerate(rs):
        if pull(d, mu) not in cand:
            report["derelictions"].append(i)
    report["weakening"] = pull(w, (ONE,)) in cand
    ku = [k_transform(u, N) for u in us]
    n = len(e)
    for j, h in enumerate(probes):
        h = tuple(scalar(a) for a in h)
        if len(h) != n * n:
            raise ShapeError("probe is not a copoint over X_e x X_e")
        premise = all(_contract_left(k, h, n) in cand and _contract_right(h, k, n) in cand for k in ku)
        if premise and pull(c, h) not in cand:
            report["contraction"].append(j)
    report["ok"] = not report["derelictions"] and report["weakening"] and not report["contraction"]
    return report


# -- Pcoh --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PcohObject:
    """A web with generators; the object's set of points is ``gens^oo``."""

    web: Web
    gens: GenSet

    def __post_init__(self):
        if self.gens.web != self.web:
            raise ShapeError("generators over a different web")
        self.gens.require_finite()

    @classmethod
    def of(cls, web: Web, vectors: Sequence[Sequence]) -> "PcohObject":
        return cls(web, GenSet(web, vectors))


@dataclass(frozen=True)
class AtomReport:
    atom: str
    sup: Scalar          # sup of x_a over the object's points (max over generators)
    polar_sup: Scalar    # sup of y_a over the polar, the LP with objective e_a
    witness: tuple       # LP witness point (or last vertex when unbounded)
    ray: Optional[tuple]

    @property
    def ok(self) -> bool:
        return 0 < self.sup and self.sup is not INF


@dataclass(frozen=True)
class PcohReport:
    atoms: tuple

    @property
    def valid(self) -> bool:
        return all(a.ok for a in self.atoms)

    def __bool__(self):
        return self.valid


def validate_pcoh(X: PcohObject) -> PcohReport:
    """Per-atom check of ``0 < sup {x_a : x in P(X)} < inf``.

    The sup over the points is the largest generator coordinate; the LP
    over the polar computes its reciprocal independently, and the two are
    cross-checked.
    """
    out = []
    n = len(X.web)
    for a in range(n):
        s = sup_on_generators(X.gens, tuple(ONE if j == a else ZERO for j in range(n)))
        sol = solve(X.gens.gens, [ONE if j == a else ZERO for j in range(n)])
        expected = INF if s == 0 else 1 / s
        if sol.optimum != expected:
            raise AssertionError(f"coordinate sup {s} disagrees with polar LP {sol.optimum}")
        out.append(AtomReport(X.web.label(a), s, sol.optimum, sol.witness, sol.ray))
    return PcohReport(tuple(out))


def as_glue(X: PcohObject) -> GlueObject:
    return GlueObject(X.web, X.gens, POLAR, "bipolar")


def pcoh_unit() -> PcohObject:
    return PcohObject.of(UNIT, [(ONE,)])


def pcoh_bang(X: PcohObject, N: int) -> PcohObject:
    """Exponential with generators ``k(g)`` for each generator ``g``.

    The result is the Pcoh exponential exactly when ``X`` has a single
    generator; otherwise ``k`` is not linear and the generated set is
    contained in, but may be smaller than, ``{k(x) : x in P(X)}^oo``.
    """
    e = exp_web(X.web, N)
    return PcohObject.of(e, [k_transform(g, N) for g in X.gens.gens])


def pcoh_tensor(X: PcohObject, Y: PcohObject) -> PcohObject:
    g = tensor_gens(X.gens, Y.gens)
    return PcohObject(g.web, g)


def pcoh_with(X: PcohObject, Y: PcohObject) -> PcohObject:
    web = coproduct_web(X.web, Y.web)
    return PcohObject.of(web, [u + v for u in X.gens.gens for v in Y.gens.gens])


def pcoh_plus(X: PcohObject, Y: PcohObject) -> PcohObject:
    web = coproduct_web(X.web, Y.web)
    zx, zy = (ZERO,) * len(X.web), (ZERO,) * len(Y.web)
    return PcohObject.of(web, [u + zy for u in X.gens.gens] + [zx + v for v in Y.gens.gens])


def pcoh_dual(X: PcohObject) -> PcohObject:
    """Generators of the polar, by vertex enumeration."""
    return PcohObject(X.web, polar_vertices(X.gens))


@dataclass(frozen=True)
class GeneratorVerdict:
    index: int
    image: tuple
    optimum: Scalar
    witness: tuple
    ray: Optional[tuple]

    @property
    def ok(self) -> bool:
        return self.optimum <= 1


__all__.append("GeneratorVerdict")


def pcoh_morphism_report(u: Kernel, X: PcohObject, Y: PcohObject) -> list[GeneratorVerdict]:
    """For each generator ``g`` of ``X``: the LP deciding ``g u`` in ``P(Y)``."""
    if u.src != X.web or u.dst != Y.web:
        raise ShapeError("kernel does not go between the objects' webs")
    out = []
    for i, g in enumerate(X.gens.gens):
        img = push(g, u)
        sol = bipolar_sup(Y.gens, img)
        out.append(GeneratorVerdict(i, img, sol.optimum, sol.witness, sol.ray))
    return out


def pcoh_is_morphism(u: Kernel, X: PcohObject, Y: PcohObject) -> bool:
    return all(v.ok for v in pcoh_morphism_report(u, X, Y))
