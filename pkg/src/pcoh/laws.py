"""Randomised law suites with counterexample shrinking.

Each law is a function of a parameter dict (web sizes, degrees, a value cap
and a per-case seed) that either returns normally or raises
:class:`Counterexample`.  Parameters are drawn deterministically from the
run seed, so a report depends only on the seed and the flags.

Random scalars are ``p/q`` with ``1 <= p, q <= cap`` (``cap <= 4``), with
occasional zeros and, where the law allows it, occasional ``inf``.

On failure the runner shrinks the parameters greedily (sizes, then degrees,
then the value cap) while the law keeps failing, and reports the smallest
failing case with the offending objects serialised.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from . import bang as B
from . import kernel as K
from . import oracles as O
from .duality import (
    GenSet, bipolar_equal, bipolar_member, bipolar_sup, check_adjunction,
    inner, is_orthogonal, polar_member, sup_on_generators, tensor_gens,
)
from .errors import ModeError, ResourceError, ShapeError
from .glueing import (
    POLAR, Defined, GlueObject, PcohObject, Points, as_glue, check_why_not_candidate,
    dual, g_par, g_plus, g_tensor, g_with, is_glue_morphism, is_glue_morphism_both,
    is_slack, is_tight, pcoh_bang, pcoh_is_morphism, pcoh_tensor, pcoh_unit,
    structurally_equal, validate_pcoh,
)
from .io import glue_to_dict, kernel_to_dict, pcoh_to_dict, vector_to_json
from .kernel import Kernel
from .lp import solve
from .scalar import INF, ONE, ZERO, format_scalar, star
from .space import (
    UNIT, ExpWeb, Multiset, SumWeb, Web, coproduct_web, exp_web, flatten,
    parse_multiset_label, product_web,
)

__all__ = [
    "Law", "LAWS", "SUITES", "Counterexample", "StructureMaps", "RunReport",
    "run_suite", "laws_in", "load_structure",
]

SUITES = (
    "semiring", "category", "biproduct", "tensor", "trace", "bang-functor",
    "comonad", "comonoid", "k-distributivity", "orthogonality", "polar",
    "glueing", "pcoh",
)

SHRINK_ORDER = ("nx", "ny", "nz", "nw", "n", "m", "g", "N", "M")
SIZE_KEYS = {"nx", "ny", "nz", "nw", "n"}
DEGREE_KEYS = {"N", "M"}


class Counterexample(Exception):
    def __init__(self, message: str, objects: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.objects = objects or {}


def expect(cond: bool, message: str, /, **objects):
    if not cond:
        raise Counterexample(message, objects)


# -- structure maps (overridable) ---------------------------------------------------

class StructureMaps:
    """The comonad's structure maps, with optional fixed-kernel overrides.

    An override replaces the map only on its own web and truncation;
    when any override is present, every law that builds exponentials uses
    that web and those degrees.
    """

    def __init__(self, overrides: Optional[dict] = None):
        self.overrides = dict(overrides or {})
        self.pinned = None
        for name, (k, x, n, m) in self.overrides.items():
            pin = (x, n, m if m is not None else (self.pinned[2] if self.pinned else None))
            if self.pinned and (self.pinned[0] != x or self.pinned[1] != n):
                raise ShapeError("structure overrides must share a web and degree")
            self.pinned = pin

    def _get(self, name, x, n, m=None):
        o = self.overrides.get(name)
        if o is not None and o[1] == x and o[2] == n and (m is None or o[3] == m):
            return o[0]
        return None

    def dereliction(self, x, n):
        return self._get("dereliction", x, n) or _dereliction(x, n)

    def storage(self, x, n, m):
        return self._get("storage", x, n, m) or _storage(x, n, m)

    def weakening(self, x, n):
        return self._get("weakening", x, n) or _weakening(x, n)

    def contraction(self, x, n):
        return self._get("contraction", x, n) or _contraction(x, n)


_dereliction = lru_cache(maxsize=64)(B.dereliction)
_storage = lru_cache(maxsize=64)(B.storage)
_weakening = lru_cache(maxsize=64)(B.weakening)
_contraction = lru_cache(maxsize=64)(B.contraction)


def _infer_exp(labels: tuple, max_degree: int = 8):
    """Find ``(X, N)`` with ``exp_web(X, N).labels == labels``."""
    if not labels or labels[0] != "[]":
        return None
    for k in range(0, len(labels)):
        cand = labels[1:1 + k]
        if not all(s.startswith("[") and s.endswith("]") for s in cand):
            break
        x = Web([s[1:-1] for s in cand])
        for n in range(0, max_degree + 1):
            try:
                e = exp_web(x, n)
            except ResourceError:
                break
            if len(e) > len(labels):
                break
            if e.labels == labels:
                return x, n
    return None


def load_structure(name: str, k: Kernel):
    """Rebuild an override kernel on structured webs; returns ``(kernel, X, N, M)``."""
    src = tuple(k.src.labels)
    found = _infer_exp(src)
    if found is None:
        raise ShapeError(f"{name}: source labels are not an exponential web")
    x, n = found
    e = exp_web(x, n)
    m = None
    if name == "dereliction":
        dst = x
    elif name == "weakening":
        dst = UNIT
    elif name == "contraction":
        dst = product_web(e, e)
    elif name == "storage":
        dst = None
        for m in range(0, 6):
            cand = exp_web(e, m)
            if len(cand) > len(k.dst):
                break
            if tuple(cand.labels) == tuple(k.dst.labels):
                dst = cand
                break
        if dst is None:
            raise ShapeError("storage: target labels are not a double exponential web")
    else:
        raise ShapeError(f"unknown structure map {name!r}")
    if tuple(dst.labels) != tuple(k.dst.labels):
        raise ShapeError(f"{name}: target labels do not match the expected web")
    return Kernel(e, dst, ((i, j, v) for (i, j), v in k.items())), x, n, m


# -- random generation ---------------------------------------------------------------

LABELS = "abcdefgh"


def plain_web(n: int, prefix: str = "") -> Web:
    return Web([prefix + LABELS[i] for i in range(n)])


class Ctx:
    """Per-case random source and helpers."""

    def __init__(self, p: dict, maps: StructureMaps):
        self.p = p
        self.rng = random.Random(p["seed"])
        self.cap = p.get("cap", 4)
        self.maps = maps

    def web(self, n: int, prefix: str = "") -> Web:
        return plain_web(n, prefix)

    def base(self, key: str = "nx") -> Web:
        """The web exponentials are built on (pinned by overrides)."""
        if self.maps.pinned:
            return self.maps.pinned[0]
        return plain_web(self.p[key])

    def degree(self, key: str = "N") -> int:
        if self.maps.pinned:
            return self.maps.pinned[1]
        return self.p[key]

    def outer(self, key: str = "M") -> int:
        if self.maps.pinned and self.maps.pinned[2] is not None:
            return self.maps.pinned[2]
        return self.p[key]

    def scalar(self, zero: float = 0.25, inf: float = 0.0):
        r = self.rng.random()
        if r < zero:
            return ZERO
        if r < zero + inf:
            return INF
        return Fraction(self.rng.randint(1, self.cap), self.rng.randint(1, self.cap))

    def vec(self, n: int, zero: float = 0.25, inf: float = 0.0) -> tuple:
        return tuple(self.scalar(zero, inf) for _ in range(n))

    def kernel(self, x: Web, y: Web, zero: float = 0.3, inf: float = 0.0) -> Kernel:
        return Kernel(x, y, ((i, j, self.scalar(zero, inf)) for i in range(len(x)) for j in range(len(y))))

    def substochastic(self, x: Web, y: Web) -> Kernel:
        """Rows with sums at most 1."""
        entries = []
        for i in range(len(x)):
            w = [self.scalar(0.3) for _ in range(len(y))]
            tot = sum(w, ZERO)
            scale = Fraction(self.rng.randint(1, self.cap), self.cap)
            for j, v in enumerate(w):
                if tot:
                    entries.append((i, j, v / tot * scale))
        return Kernel(x, y, entries)

    def superstochastic(self, x: Web, y: Web) -> Kernel:
        """Rows with sums at least 1."""
        entries = []
        for i in range(len(x)):
            w = [self.scalar(0.3) for _ in range(len(y))]
            w[self.rng.randrange(len(y))] += 1
            tot = sum(w, ZERO)
            scale = 1 + Fraction(self.rng.randint(0, self.cap), self.cap)
            entries.extend((i, j, v / tot * scale) for j, v in enumerate(w))
        return Kernel(x, y, entries)

    def gens(self, web: Web, count: int, grid: bool = False) -> GenSet:
        out = []
        for _ in range(count):
            if grid:
                out.append(tuple(Fraction(self.rng.randint(0, 8), 4) for _ in web))
            else:
                out.append(self.vec(len(web), zero=0.3))
        return GenSet(web, out)

    def pcoh(self, web: Web, count: int) -> PcohObject:
        """A valid Pcoh object: random generators plus one covering every atom."""
        g = list(self.gens(web, count).gens)
        g.append(tuple(Fraction(self.rng.randint(1, self.cap), self.rng.randint(1, self.cap)) for _ in web))
        return PcohObject(web, GenSet(web, g))


# -- law registry ----------------------------------------------------------------------

@dataclass
class Law:
    suite: str
    name: str
    anchor: str
    fn: Callable
    params: dict
    cases: int

    def draw(self, rng: random.Random, caps: dict) -> dict:
        p = {}
        for key, (lo, hi) in self.params.items():
            if key in SIZE_KEYS and caps.get("max_web") is not None:
                hi = max(lo, min(hi, caps["max_web"]))
            if key in DEGREE_KEYS and caps.get("max_degree") is not None:
                hi = max(lo, min(hi, caps["max_degree"]))
            p[key] = rng.randint(lo, hi)
        p["cap"] = 4
        p["seed"] = rng.getrandbits(32)
        return p


LAWS: list[Law] = []


def law(suite: str, name: str, anchor: str, cases: int = 100, **params):
    def deco(fn):
        LAWS.append(Law(suite, name, anchor, fn, params, cases))
        return fn
    return deco


def laws_in(suite: str) -> list[Law]:
    if suite == "all":
        return list(LAWS)
    if suite not in SUITES:
        raise KeyError(suite)
    return [l for l in LAWS if l.suite == suite]


def _ser(obj):
    if isinstance(obj, Kernel):
        return kernel_to_dict(obj)
    if isinstance(obj, PcohObject):
        return pcoh_to_dict(obj)
    if isinstance(obj, GlueObject):
        try:
            return glue_to_dict(obj)
        except Exception:
            return repr(obj)
    if isinstance(obj, GenSet):
        return [vector_to_json(g) for g in obj.gens]
    if isinstance(obj, (tuple, list)) and all(isinstance(a, Fraction) or a is INF for a in obj):
        return vector_to_json(obj)
    if isinstance(obj, Fraction) or obj is INF:
        return format_scalar(obj)
    if isinstance(obj, dict):
        return {str(k): _ser(v) for k, v in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [_ser(v) for v in obj]
    return obj if isinstance(obj, (int, str, bool, type(None))) else repr(obj)


def _diff(k1: Kernel, k2: Kernel, limit: int = 5) -> list:
    out = []
    keys = sorted(set(k for k, _ in k1.items()) | set(k for k, _ in k2.items()))
    for i, j in keys:
        if k1[i, j] != k2[i, j]:
            out.append([k1.src.label(i), k1.dst.label(j), format_scalar(k1[i, j]), format_scalar(k2[i, j])])
            if len(out) >= limit:
                break
    return out


def expect_equal(k1: Kernel, k2: Kernel, message: str, /, **objects):
    if k1.src != k2.src or k1.dst != k2.dst:
        raise Counterexample(message + " (shapes differ)", objects)
    if k1 != k2:
        objects["differences"] = _diff(k1, k2)
        raise Counterexample(message, objects)


def expect_block_equal(k1: Kernel, k2: Kernel, cols, message: str, /, rows=None, **objects):
    if k1.src != k2.src or k1.dst != k2.dst:
        raise Counterexample(message + " (shapes differ)", objects)
    b1, b2 = k1.restrict(rows, cols), k2.restrict(rows, cols)
    if b1 != b2:
        bad = sorted(set(b1) ^ set(b2) | {k for k in set(b1) & set(b2) if b1[k] != b2[k]})[:5]
        objects["differences"] = [[k1.src.label(i), k1.dst.label(j),
                                   format_scalar(b1.get((i, j), ZERO)), format_scalar(b2.get((i, j), ZERO))]
                                  for i, j in bad]
        raise Counterexample(message, objects)


def _run_case(l: Law, p: dict, maps: StructureMaps):
    """``None`` on success, else ``(message, objects)``."""
    try:
        l.fn(Ctx(p, maps))
    except Counterexample as ce:
        return ce.message, ce.objects
    except ResourceError:
        raise
    except (ShapeError, ModeError, ValueError, KeyError, IndexError, ZeroDivisionError) as exc:
        return f"{type(exc).__name__}: {exc}", {}
    return None


def _shrink(l: Law, p: dict, maps: StructureMaps, budget: int = 60):
    best = dict(p)
    res = _run_case(l, best, maps)
    changed = True
    while changed and budget > 0:
        changed = False
        for key in [k for k in SHRINK_ORDER if k in best] + ["cap"]:
            lo = l.params.get(key, (1, None))[0] if key != "cap" else 1
            while best[key] > lo and budget > 0:
                trial = dict(best)
                trial[key] -= 1
                budget -= 1
                r = _run_case(l, trial, maps)
                if r is None:
                    break
                best, res, changed = trial, r, True
    return best, res


# -- reports -----------------------------------------------------------------------------

@dataclass
class RunReport:
    suite: str
    seed: int
    laws: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    cases: int = 0
    wall_time: Optional[float] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "seed": self.seed, "cases": self.cases,
             "status": "pass" if self.ok else "fail", "laws": self.laws, "failures": self.failures}
        if timing and self.wall_time is not None:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_text(self, timing: bool = False) -> str:
        lines = [f"suite {self.suite} seed {self.seed}: {len(self.laws)} laws, {self.cases} cases"]
        for l in self.laws:
            lines.append(f"  {l['status'].upper():4} {l['suite']}/{l['name']} [{l['anchor']}] cases={l['cases']}")
        for f in self.failures:
            lines.append(f"FAIL {f['suite']}/{f['law']} [{f['anchor']}]: {f['message']}")
            lines.append(f"  minimized parameters: {f['params']}")
            for k, v in f["counterexample"].items():
                lines.append(f"  {k}: {v}")
        lines.append("result: " + ("pass" if self.ok else f"{len(self.failures)} law(s) failed"))
        if timing and self.wall_time is not None:
            lines.append(f"wall time: {self.wall_time:.3f}s")
        return "\n".join(lines) + "\n"


def run_suite(suite: str, seed: int = 0, max_web: Optional[int] = None,
              max_degree: Optional[int] = None, maps: Optional[StructureMaps] = None,
              cases_scale: float = 1.0, only: Optional[Callable[[Law], bool]] = None) -> RunReport:
    maps = maps or StructureMaps()
    caps = {"max_web": max_web, "max_degree": max_degree}
    report = RunReport(suite, seed)
    start = time.perf_counter()
    for idx, l in enumerate(laws_in(suite)):
        if only is not None and not only(l):
            continue
        rng = random.Random(f"{seed}/{l.suite}/{l.name}")
        n = max(1, int(round(l.cases * cases_scale)))
        status, ran = "pass", 0
        for _ in range(n):
            p = l.draw(rng, caps)
            ran += 1
            if _run_case(l, p, maps) is not None:
                best, (msg, objs) = _shrink(l, p, maps)
                report.failures.append({
                    "suite": l.suite, "law": l.name, "anchor": l.anchor, "message": msg,
                    "params": {k: best[k] for k in sorted(best)},
                    "counterexample": _ser(objs),
                })
                if maps.pinned:
                    report.failures[-1]["pinned"] = {"web": list(maps.pinned[0].labels),
                                                     "N": maps.pinned[1], "M": maps.pinned[2]}
                status = "fail"
                break
        report.cases += ran
        report.laws.append({"suite": l.suite, "name": l.name, "anchor": l.anchor,
                            "cases": ran, "status": status})
    report.wall_time = time.perf_counter() - start
    return report


# =============================================================================================
# semiring
# =============================================================================================

def _s3(c: Ctx):
    return c.scalar(0.2, 0.1), c.scalar(0.2, 0.1), c.scalar(0.2, 0.1)


@law("semiring", "add-commutative", "commutativity of +", 1000)
def _(c):
    a, b, _ = _s3(c)
    expect(a + b == b + a, "a+b != b+a", a=a, b=b)


@law("semiring", "add-associative", "associativity of +", 1000)
def _(c):
    a, b, d = _s3(c)
    expect((a + b) + d == a + (b + d), "(a+b)+c != a+(b+c)", a=a, b=b, c=d)


@law("semiring", "mul-commutative", "commutativity of *", 1000)
def _(c):
    a, b, _ = _s3(c)
    expect(a * b == b * a, "ab != ba", a=a, b=b)


@law("semiring", "mul-associative", "associativity of *", 1000)
def _(c):
    a, b, d = _s3(c)
    expect((a * b) * d == a * (b * d), "(ab)c != a(bc)", a=a, b=b, c=d)


@law("semiring", "distributive", "distributivity of * over +", 1000)
def _(c):
    a, b, d = _s3(c)
    expect(a * (b + d) == a * b + a * d, "a(b+c) != ab+ac", a=a, b=b, c=d)


@law("semiring", "units", "0 and 1 are units; 0 annihilates, including 0*inf", 1000)
def _(c):
    a, _, _ = _s3(c)
    expect(a + ZERO == a and ONE * a == a and ZERO * a == ZERO and a * ZERO == ZERO,
           "unit or annihilator law fails", a=a)


@law("semiring", "star-fixpoint", "star(a) = 1 + a star(a)", 1000)
def _(c):
    a, _, _ = _s3(c)
    expect(star(a) == ONE + a * star(a), "star(a) != 1 + a star(a)", a=a)


@law("semiring", "monotone", "monotonicity of + and *", 1000)
def _(c):
    a, b, d = _s3(c)
    if a > b:
        a, b = b, a
    expect(a + d <= b + d and a * d <= b * d, "order not preserved", a=a, b=b, c=d)


# =============================================================================================
# category, biproduct, tensor
# =============================================================================================

_web4 = dict(nx=(1, 4), ny=(1, 4), nz=(1, 4), nw=(1, 4))


@law("category", "compose-associative", "associativity of composition", 500, **_web4)
def _(c):
    x, y, z, w = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z"), c.web(c.p["nw"], "w")
    k1, k2, k3 = c.kernel(x, y, inf=0.05), c.kernel(y, z, inf=0.05), c.kernel(z, w, inf=0.05)
    expect_equal(K.compose(K.compose(k1, k2), k3), K.compose(k1, K.compose(k2, k3)),
                 "(k1;k2);k3 != k1;(k2;k3)", k1=k1, k2=k2, k3=k3)


@law("category", "compose-units", "identity laws", 500, nx=(0, 4), ny=(0, 4))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    k = c.kernel(x, y, inf=0.05)
    expect_equal(K.compose(K.identity(x), k), k, "id;k != k", k=k)
    expect_equal(K.compose(k, K.identity(y)), k, "k;id != k", k=k)


@law("category", "compose-naive", "composition is the matrix product", 500, **_web4)
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    k1, k2 = c.kernel(x, y, inf=0.05), c.kernel(y, z, inf=0.05)
    expect(K.compose(k1, k2).to_dense() == O.naive_compose(k1.to_dense(), k2.to_dense()),
           "compose disagrees with the triple loop", k1=k1, k2=k2)


@law("category", "dagger-involutive", "dagger is an involution fixing identities", 500, nx=(0, 4), ny=(0, 4))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    k = c.kernel(x, y, inf=0.05)
    expect_equal(K.dagger(K.dagger(k)), k, "dagger(dagger k) != k", k=k)
    expect_equal(K.dagger(K.identity(x)), K.identity(x), "dagger(id) != id")


@law("category", "dagger-contravariant", "dagger reverses composition", 500, **_web4)
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    k1, k2 = c.kernel(x, y, inf=0.05), c.kernel(y, z, inf=0.05)
    expect_equal(K.dagger(K.compose(k1, k2)), K.compose(K.dagger(k2), K.dagger(k1)),
                 "dagger(k1;k2) != dagger k2; dagger k1", k1=k1, k2=k2)


@law("biproduct", "projection-injection", "biproduct equations", 500, nx=(0, 4), ny=(0, 4))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    m = K.biproduct_maps(x, y)
    s = coproduct_web(x, y)
    expect_equal(K.compose(m["inj_x"], m["proj_x"]), K.identity(x), "inj_x;proj_x != id")
    expect_equal(K.compose(m["inj_y"], m["proj_y"]), K.identity(y), "inj_y;proj_y != id")
    expect_equal(K.compose(m["inj_x"], m["proj_y"]), K.zero(x, y), "inj_x;proj_y != 0")
    expect_equal(K.msum([K.compose(m["proj_x"], m["inj_x"]), K.compose(m["proj_y"], m["inj_y"])]),
                 K.identity(s), "proj;inj summed != id")


@law("biproduct", "mediating-maps", "universal properties of pairing and copairing", 500, **_web4)
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    m = K.biproduct_maps(x, y)
    f, g = c.kernel(z, x, inf=0.05), c.kernel(z, y, inf=0.05)
    cp = K.copairing(f, g)
    expect_equal(K.compose(cp, m["proj_x"]), f, "copairing;proj_x != f", f=f, g=g)
    expect_equal(K.compose(cp, m["proj_y"]), g, "copairing;proj_y != g", f=f, g=g)
    f2, g2 = c.kernel(x, z, inf=0.05), c.kernel(y, z, inf=0.05)
    pr = K.pairing(f2, g2)
    expect_equal(K.compose(m["inj_x"], pr), f2, "inj_x;pairing != f", f=f2, g=g2)
    expect_equal(K.compose(m["inj_y"], pr), g2, "inj_y;pairing != g", f=f2, g=g2)


@law("biproduct", "sum-enrichment", "composition is bilinear over sums", 500, **_web4)
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    a, b, k = c.kernel(x, y, inf=0.05), c.kernel(x, y, inf=0.05), c.kernel(y, z, inf=0.05)
    expect_equal(K.compose(a + b, k), K.compose(a, k) + K.compose(b, k), "(a+b);k != a;k + b;k", a=a, b=b, k=k)
    expect_equal(a + b, b + a, "a+b != b+a", a=a, b=b)
    expect_equal(a + K.zero(x, y), a, "a+0 != a", a=a)


@law("tensor", "fubini-interchange", "bifunctoriality of the tensor", 500, **_web4)
def _(c):
    x1, y1, z1 = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    x2, y2, z2 = c.web(c.p["nw"], "u"), c.web(c.p["ny"], "v"), c.web(c.p["nx"], "w")
    k1, k2 = c.kernel(x1, y1, inf=0.05), c.kernel(x2, y2, inf=0.05)
    i1, i2 = c.kernel(y1, z1, inf=0.05), c.kernel(y2, z2, inf=0.05)
    lhs = K.compose(K.tensor(k1, k2), K.tensor(i1, i2))
    rhs = K.tensor(K.compose(k1, i1), K.compose(k2, i2))
    expect_equal(lhs, rhs, "(k1 x k2);(i1 x i2) != (k1;i1) x (k2;i2)", k1=k1, k2=k2, i1=i1, i2=i2)
    expect(lhs.to_dense() == O.naive_compose(O.naive_tensor(k1.to_dense(), k2.to_dense()),
                                             O.naive_tensor(i1.to_dense(), i2.to_dense())),
           "tensor disagrees with the Kronecker product", k1=k1, k2=k2)
    expect_equal(K.tensor(K.identity(x1), K.identity(x2)), K.identity(product_web(x1, x2)), "id x id != id")


@law("tensor", "symmetry-natural", "naturality and involutivity of the symmetry", 500, **_web4)
def _(c):
    x1, y1, x2, y2 = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "u"), c.web(c.p["nw"], "v")
    k1, k2 = c.kernel(x1, y1), c.kernel(x2, y2)
    expect_equal(K.compose(K.tensor(k1, k2), K.symmetry(y1, y2)),
                 K.compose(K.symmetry(x1, x2), K.tensor(k2, k1)), "symmetry not natural", k1=k1, k2=k2)
    expect_equal(K.compose(K.symmetry(x1, x2), K.symmetry(x2, x1)), K.identity(product_web(x1, x2)),
                 "symmetry not involutive")


@law("tensor", "associator-unitors", "naturality of associator and unitors", 300, nx=(1, 3), ny=(1, 3), nz=(1, 3))
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    a, b, d = c.kernel(x, x), c.kernel(y, y), c.kernel(z, z)
    expect_equal(K.compose(K.tensor(K.tensor(a, b), d), K.associator(x, y, z)),
                 K.compose(K.associator(x, y, z), K.tensor(a, K.tensor(b, d))),
                 "associator not natural", a=a, b=b, d=d)
    expect_equal(K.compose(K.tensor(K.identity(UNIT), a), K.left_unitor(x)),
                 K.compose(K.left_unitor(x), a), "left unitor not natural", a=a)
    expect_equal(K.compose(K.tensor(a, K.identity(UNIT)), K.right_unitor(x)),
                 K.compose(K.right_unitor(x), a), "right unitor not natural", a=a)


@law("tensor", "compact-closure", "snake equations and phi = sigma . dagger psi", 50, nx=(0, 4))
def _(c):
    x = c.web(c.p["nx"], "x")
    phi, psi = K.compact_unit(x), K.compact_counit(x)
    # X -> X x I -> X x (X x X) -> (X x X) x X -> I x X -> X
    snake = K.compose(K.dagger(K.right_unitor(x)), K.tensor(K.identity(x), phi))
    snake = K.compose(snake, K.dagger(K.associator(x, x, x)))
    snake = K.compose(snake, K.tensor(psi, K.identity(x)))
    snake = K.compose(snake, K.left_unitor(x))
    expect_equal(snake, K.identity(x), "snake equation fails")
    expect_equal(K.compose(K.dagger(psi), K.symmetry(x, x)), phi, "phi != sigma . dagger psi")


@law("tensor", "curry-round-trip", "hom isomorphism of the compact closure", 300, nx=(1, 3), ny=(1, 3), nz=(1, 3))
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    k = c.kernel(product_web(x, y), z, inf=0.05)
    cu = K.curry(k, x, y)
    expect(cu.to_dense() == O.shuffle_curry(k.to_dense(), len(x), len(y), len(z)),
           "curry disagrees with index shuffling", k=k)
    expect_equal(K.uncurry(cu, y), k, "uncurry(curry k) != k", k=k)


# =============================================================================================
# trace
# =============================================================================================

@law("trace", "star-vs-partial-sums", "Kleene star as the sup of partial geometric sums", 200, n=(1, 3))
def _(c):
    z = c.web(c.p["n"], "z")
    kind = c.rng.random()
    if kind < 0.45:
        k = c.substochastic(z, z)
    elif kind < 0.9:
        k = c.superstochastic(z, z)
    else:
        k = c.kernel(z, z, zero=0.5, inf=0.1)
    values, kinds, _ = O.star_oracle(k.to_dense())
    expect(K.kleene_star(k).to_dense() == values, "kleene_star disagrees with partial sums", k=k,
           oracle=[[format_scalar(v) for v in r] for r in values], kinds=kinds)


@law("trace", "star-unfold", "star(k) = id + k star(k)", 200, n=(1, 3))
def _(c):
    z = c.web(c.p["n"], "z")
    k = c.kernel(z, z, zero=0.4, inf=0.05)
    s = K.kleene_star(k)
    expect_equal(s, K.identity(z) + K.compose(k, s), "star(k) != id + k star(k)", k=k)
    expect_equal(s, K.identity(z) + K.compose(s, k), "star(k) != id + star(k) k", k=k)


@law("trace", "yanking", "trace of the symmetry is the identity", 20, n=(0, 3))
def _(c):
    z = c.web(c.p["n"], "z")
    s = coproduct_web(z, z)
    n = len(z)
    sigma = K.from_function(s, s, lambda i: i + n if i < n else i - n)
    expect_equal(K.trace(sigma), K.identity(z), "trace of the symmetry != id")


@law("trace", "execution-formula", "trace by the execution formula", 200, nx=(1, 3), ny=(1, 3), n=(1, 3))
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["n"], "z")
    k = c.kernel(coproduct_web(x, z), coproduct_web(y, z), zero=0.4)
    t = K.trace(k)
    d = k.to_dense()
    nx, ny, nz = len(x), len(y), len(z)
    zz = [r[ny:] for r in d[nx:]]
    st, _, _ = O.star_oracle(zz)
    xz = [r[ny:] for r in d[:nx]]
    zy = [r[:ny] for r in d[nx:]]
    mid = O.naive_compose(O.naive_compose(xz, st), zy)
    want = [[d[i][j] + mid[i][j] for j in range(ny)] for i in range(nx)]
    expect(t.to_dense() == want, "trace disagrees with the execution formula", k=k)


# =============================================================================================
# exponential functor
# =============================================================================================

_bang_p = dict(nx=(1, 3), ny=(1, 3), N=(0, 3))


@law("bang-functor", "perm-equals-coeff", "rearrangement sum = matching-multiset coefficient formula", 200, **_bang_p)
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    t = c.kernel(x, y, inf=0.05)
    N = c.p["N"]
    expect_equal(B.bang_kernel_perm(t, N), B.bang_kernel_coeff(t, N), "perm != coeff", t=t)


@law("bang-functor", "perm-brute-force", "sum over all permutations divided by the stabiliser", 200, **_bang_p)
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    t = c.kernel(x, y, inf=0.05)
    N = c.p["N"]
    bt = B.bang_kernel_perm(t, N)
    td = t.to_dense()
    for i, a in enumerate(bt.src.atoms):
        for j, b in enumerate(bt.dst.atoms):
            if a.degree == b.degree:
                expect(bt[i, j] == O.brute_bang(td, a.elements(), b.elements()),
                       f"entry {bt.src.label(i)},{bt.dst.label(j)} differs from brute force", t=t)
            else:
                expect(bt[i, j] == 0, "entry across degrees", t=t)


@law("bang-functor", "permanent", "multiplicity-free entries are permanents", 200, nx=(1, 4), ny=(1, 4), N=(1, 4))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    t = c.kernel(x, y)
    N = min(c.p["N"], len(x), len(y))
    bt = B.bang_kernel_perm(t, N)
    td = t.to_dense()
    for i, a in enumerate(bt.src.atoms):
        if a.factorial() != 1:
            continue
        for j, b in enumerate(bt.dst.atoms):
            if b.degree != a.degree or b.factorial() != 1:
                continue
            sub = [[td[r][s] for s in b.elements()] for r in a.elements()]
            expect(bt[i, j] == O.ryser_permanent(sub), "entry differs from the Ryser permanent", t=t)


@law("bang-functor", "functorial", "!(k;i) = !k;!i and !id = id", 200, nx=(1, 3), ny=(1, 3), nz=(1, 3), N=(0, 3))
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    k, i = c.kernel(x, y), c.kernel(y, z)
    N = c.p["N"]
    for alg in B.ALGORITHMS:
        expect_equal(B.bang(K.compose(k, i), N, alg), K.compose(B.bang(k, N, alg), B.bang(i, N, alg)),
                     f"{alg}: !(k;i) != !k;!i", k=k, i=i)
        expect_equal(B.bang(K.identity(x), N, alg), K.identity(exp_web(x, N)), f"{alg}: !id != id")


@law("bang-functor", "graded", "the exponential preserves degree", 200, **_bang_p)
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    bt = B.bang(c.kernel(x, y), c.p["N"])
    expect(all(bt.src.atoms[i].degree == bt.dst.atoms[j].degree for (i, j), _ in bt.items()),
           "nonzero entry across degrees")


@law("bang-functor", "web-grades", "grade sizes are C(n+k-1, n)", 50, nx=(0, 4), N=(0, 4))
def _(c):
    from math import comb
    x = c.web(c.p["nx"], "x")
    e = exp_web(x, c.p["N"])
    for n in range(c.p["N"] + 1):
        want = comb(n + len(x) - 1, n) if len(x) else int(n == 0)
        expect(len(e.grade(n)) == want, f"grade {n} has {len(e.grade(n))} atoms, expected {want}")
        expect(all(e.atoms[i].degree == n for i in e.grade(n)), f"grade {n} has wrong degrees")
    expect(all(parse_multiset_label(lab, x) == m for lab, m in zip(e.labels, e.atoms)),
           "multiset labels do not round-trip")


@law("bang-functor", "flatten-homomorphism", "flattening is a monoid homomorphism", 200, nx=(1, 3), N=(0, 3), M=(0, 3))
def _(c):
    x = c.web(c.p["nx"], "x")
    inner_w = exp_web(x, c.p["N"])
    n = len(inner_w)
    m1 = Multiset.of(c.rng.randrange(n) for _ in range(c.rng.randint(0, c.p["M"])))
    m2 = Multiset.of(c.rng.randrange(n) for _ in range(c.rng.randint(0, c.p["M"])))
    expect(flatten(m1 + m2, inner_w) == flatten(m1, inner_w) + flatten(m2, inner_w),
           "flatten(m1 + m2) != flatten m1 + flatten m2")
    i = c.rng.randrange(n)
    expect(flatten(Multiset.of([i]), inner_w) == inner_w.atoms[i], "flatten of a singleton")


@law("bang-functor", "seely-bijection", "Seely isomorphism", 50, nx=(0, 3), ny=(0, 3), N=(0, 3))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    s = B.seely_iso(x, y, c.p["N"])
    expect_equal(K.compose(s, K.dagger(s)), K.identity(s.src), "seely;seely^T != id")
    expect_equal(K.compose(K.dagger(s), s), K.identity(s.dst), "seely^T;seely != id")


# =============================================================================================
# comonad
# =============================================================================================

_cm = dict(nx=(1, 3), ny=(1, 3), N=(1, 3), M=(1, 2))


def _diag_rect(src: ExpWeb, dst: ExpWeb) -> Kernel:
    return Kernel(src, dst, ((i, dst.index[m], ONE) for i, m in enumerate(src.atoms) if m in dst.index))


@law("comonad", "dereliction-natural", "naturality of dereliction", 100, **_cm)
def _(c):
    x, N = c.base(), c.degree()
    y = c.web(c.p["ny"], "y")
    t = c.kernel(x, y)
    dx = c.maps.dereliction(x, N)
    expect_equal(K.compose(B.bang(t, N), B.dereliction(y, N)), K.compose(dx, t),
                 "!t;d != d;t", t=t, dereliction=dx)


@law("comonad", "storage-natural", "naturality of storage", 60, **_cm)
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    y = c.web(c.p["ny"], "y")
    t = c.kernel(x, y)
    sx = c.maps.storage(x, N, M)
    lhs = K.compose(B.bang(t, N), B.storage(y, N, M))
    rhs = K.compose(sx, B.bang(B.bang(t, N), M))
    expect_equal(lhs, rhs, "!t;s != s;!!t", t=t, storage=sx)


@law("comonad", "counit-left", "s;d = id", 30, **_cm)
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    e = exp_web(x, N)
    s = c.maps.storage(x, N, M)
    d_outer = c.maps.dereliction(e, M)
    expect_equal(K.compose(s, d_outer), K.identity(e), "s;d_{X_e} != id", storage=s)


@law("comonad", "counit-right", "s;!d = id", 30, **_cm)
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    s = c.maps.storage(x, N, M)
    d = c.maps.dereliction(x, N)
    lhs = K.compose(s, B.bang(d, M))
    expect_equal(lhs, _diag_rect(exp_web(x, N), exp_web(x, M)), "s;!d != id", storage=s, dereliction=d)


@law("comonad", "coassociative", "s;s = s;!s", 20, **_cm)
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    e = exp_web(x, N)
    s = c.maps.storage(x, N, M)
    ee = s.dst
    lhs = K.compose(s, B.storage(e, M, M))
    rhs = K.compose(s, B.bang(s, M))
    # columns whose total outer degree fits the truncation of the middle web
    cols = [j for j, mmm in enumerate(lhs.dst.atoms) if flatten(mmm, ee).degree <= M]
    expect_block_equal(lhs, rhs, cols, "s;s_{X_e} != s;!s", storage=s)


@law("comonad", "monoidal-storage", "s is monoidal: m;s = (s x s);m;!m", 20, nx=(1, 3), ny=(1, 2), N=(1, 3), M=(1, 2))
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    y = c.web(c.p["ny"], "y")
    m = B.mon(x, y, N)
    lhs = K.compose(m, B.storage(product_web(x, y), N, M))
    rhs = K.compose(K.tensor(c.maps.storage(x, N, M), B.storage(y, N, M)),
                    B.mon(exp_web(x, N), exp_web(y, N), M))
    rhs = K.compose(rhs, B.bang(m, M))
    expect_equal(lhs, rhs, "m;s != (s x s);m;!m")


@law("comonad", "unit-coalgebra", "(I, m_I) is a coalgebra: m_I;s = m_I;!m_I", 10, N=(1, 3), M=(1, 2))
def _(c):
    N, M = c.p["N"], c.p["M"]
    lhs = K.compose(B.mon_unit(N), B.storage(UNIT, N, M))
    rhs = K.compose(B.mon_unit(M), B.bang(B.mon_unit(N), M))
    cols = [j for j, mm in enumerate(lhs.dst.atoms) if flatten(mm, exp_web(UNIT, N)).degree <= N]
    expect_block_equal(lhs, rhs, cols, "m_I;s != m_I;!m_I")


@law("comonad", "weakening-coalgebra-morphism", "w is a coalgebra morphism: s;!w = w;m_I", 30, **_cm)
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    w = c.maps.weakening(x, N)
    lhs = K.compose(c.maps.storage(x, N, M), B.bang(w, M))
    rhs = K.compose(w, B.mon_unit(M))
    expect_equal(lhs, rhs, "s;!w != w;m_I", weakening=w)


@law("comonad", "contraction-coalgebra-morphism", "c is a coalgebra morphism: s;!c = c;(s x s);m", 20,
     nx=(1, 2), N=(1, 3), M=(1, 2))
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    e = exp_web(x, N)
    cx = c.maps.contraction(x, N)
    s = c.maps.storage(x, N, M)
    lhs = K.compose(s, B.bang(cx, M))
    rhs = K.compose(K.compose(cx, K.tensor(s, s)), B.mon(e, e, M))
    expect_equal(lhs, rhs, "s;!c != c;(s x s);m", contraction=cx, storage=s)


# =============================================================================================
# comonoid
# =============================================================================================

_cn = dict(nx=(1, 3), N=(0, 3), M=(1, 2))


@law("comonoid", "contraction-commutative", "c;sigma = c", 30, **_cn)
def _(c):
    x, N = c.base(), c.degree()
    e = exp_web(x, N)
    cx = c.maps.contraction(x, N)
    expect_equal(K.compose(cx, K.symmetry(e, e)), cx, "c;sigma != c", contraction=cx)


@law("comonoid", "contraction-associative", "c;(c x id);assoc = c;(id x c)", 30, **_cn)
def _(c):
    x, N = c.base(), c.degree()
    e = exp_web(x, N)
    cx = c.maps.contraction(x, N)
    lhs = K.compose(K.compose(cx, K.tensor(cx, K.identity(e))), K.associator(e, e, e))
    rhs = K.compose(cx, K.tensor(K.identity(e), cx))
    expect_equal(lhs, rhs, "contraction is not associative", contraction=cx)


@law("comonoid", "counit", "c;(w x id) = id = c;(id x w)", 30, **_cn)
def _(c):
    x, N = c.base(), c.degree()
    e = exp_web(x, N)
    cx, w = c.maps.contraction(x, N), c.maps.weakening(x, N)
    expect_equal(K.compose(K.compose(cx, K.tensor(w, K.identity(e))), K.left_unitor(e)), K.identity(e),
                 "c;(w x id) != id", contraction=cx, weakening=w)
    expect_equal(K.compose(K.compose(cx, K.tensor(K.identity(e), w)), K.right_unitor(e)), K.identity(e),
                 "c;(id x w) != id", contraction=cx, weakening=w)


@law("comonoid", "storage-comonoid-morphism", "s;c = c;(s x s) and s;w = w", 20, **_cm)
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    e = exp_web(x, N)
    s = c.maps.storage(x, N, M)
    ee = s.dst
    cx = c.maps.contraction(x, N)
    lhs = K.compose(s, B.contraction(e, M))
    rhs = K.compose(cx, K.tensor(s, s))
    nn = len(ee)
    cols = [p for p in range(nn * nn) if ee.atoms[p // nn].degree + ee.atoms[p % nn].degree <= M]
    expect_block_equal(lhs, rhs, cols, "s;c_{X_e} != c;(s x s)", storage=s, contraction=cx)
    expect_equal(K.compose(s, B.weakening(e, M)), c.maps.weakening(x, N), "s;w_{X_e} != w", storage=s)


@law("comonoid", "contraction-natural", "!t;c = c;(!t x !t) and !t;w = w", 60, nx=(1, 3), ny=(1, 3), N=(0, 3))
def _(c):
    x, N = c.base(), c.degree()
    y = c.web(c.p["ny"], "y")
    t = c.kernel(x, y)
    bt = B.bang(t, N)
    expect_equal(K.compose(bt, B.contraction(y, N)), K.compose(c.maps.contraction(x, N), K.tensor(bt, bt)),
                 "!t;c != c;(!t x !t)", t=t)
    expect_equal(K.compose(bt, B.weakening(y, N)), c.maps.weakening(x, N), "!t;w != w", t=t)


# =============================================================================================
# k-distributivity
# =============================================================================================

_kd = dict(nx=(1, 3), ny=(1, 3), N=(1, 3), M=(1, 2))


@law("k-distributivity", "k-storage", "k(k(u)) = k(u);s", 60, **_kd)
def _(c):
    x, N, M = c.base(), c.degree(), c.outer()
    u = c.vec(len(x))
    ku = B.k_transform(u, N)
    s = c.maps.storage(x, N, M)
    lhs = B.k_transform(ku, M)
    rhs = K.push(ku, s)
    inner_w = exp_web(x, N)
    for j, mm in enumerate(s.dst.atoms):
        if flatten(mm, inner_w).degree <= N:
            expect(lhs[j] == rhs[j], f"k(k(u)) != k(u);s at {s.dst.label(j)}", u=u, storage=s)


@law("k-distributivity", "k-dereliction", "k(u);d = u", 60, **_kd)
def _(c):
    x, N = c.base(), c.degree()
    u = c.vec(len(x))
    d = c.maps.dereliction(x, N)
    expect(K.push(B.k_transform(u, N), d) == u, "k(u);d != u", u=u, dereliction=d)


@law("k-distributivity", "k-contraction", "k(u);c = k(u) x k(u)", 60, **_kd)
def _(c):
    x, N = c.base(), c.degree()
    u = c.vec(len(x))
    ku = B.k_transform(u, N)
    cx = c.maps.contraction(x, N)
    lhs = K.push(ku, cx)
    rhs = K.tensor_vectors(ku, ku)
    e = exp_web(x, N)
    n = len(e)
    for p in range(n * n):
        if e.atoms[p // n].degree + e.atoms[p % n].degree <= N:
            expect(lhs[p] == rhs[p], f"k(u);c != k(u) x k(u) at {cx.dst.label(p)}", u=u, contraction=cx)


@law("k-distributivity", "k-weakening", "k(u);w = 1", 60, **_kd)
def _(c):
    x, N = c.base(), c.degree()
    u = c.vec(len(x))
    w = c.maps.weakening(x, N)
    expect(K.push(B.k_transform(u, N), w) == (ONE,), "k(u);w != 1", u=u, weakening=w)


@law("k-distributivity", "k-monoidal", "k(u x v) = (k(u) x k(v));m", 60, nx=(1, 2), ny=(1, 2), N=(1, 3))
def _(c):
    x, N = c.base(), c.degree()
    y = c.web(c.p["ny"], "y")
    u, v = c.vec(len(x)), c.vec(len(y))
    lhs = B.k_transform(K.tensor_vectors(u, v), N)
    rhs = K.push(K.tensor_vectors(B.k_transform(u, N), B.k_transform(v, N)), B.mon(x, y, N))
    expect(lhs == rhs, "k(u x v) != (k(u) x k(v));m", u=u, v=v)


@law("k-distributivity", "k-unit", "k on the unit point is m_I", 10, N=(0, 4))
def _(c):
    N = c.p["N"]
    expect(B.k_transform((ONE,), N) == K.push((ONE,), B.mon_unit(N)), "k(1) != m_I")


@law("k-distributivity", "k-natural", "k(u);!t = k(u;t)", 60, nx=(1, 3), ny=(1, 3), N=(0, 3))
def _(c):
    x, y, N = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.p["N"]
    u, t = c.vec(len(x)), c.kernel(x, y)
    expect(K.push(B.k_transform(u, N), B.bang(t, N)) == B.k_transform(K.push(u, t), N),
           "k(u);!t != k(u;t)", u=u, t=t)


# =============================================================================================
# orthogonality
# =============================================================================================

@law("orthogonality", "adjunction", "<f | k_* mu> = <k^* f | mu>", 500, nx=(1, 4), ny=(1, 4))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    k, f, mu = c.kernel(x, y, inf=0.05), c.vec(len(y), inf=0.05), c.vec(len(x), inf=0.05)
    expect(check_adjunction(k, f, mu), "adjunction fails", k=k, f=f, mu=mu)


@law("orthogonality", "reciprocity", "reciprocity of orthogonality", 500, nx=(1, 4), ny=(1, 4))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    k = c.kernel(x, y, inf=0.05)
    f, mu = c.vec(len(y), inf=0.05), c.vec(len(x), inf=0.05)
    expect(is_orthogonal(f, K.push(mu, k)) == is_orthogonal(K.pull(k, f), mu),
           "reciprocity fails", k=k, f=f, mu=mu)


@law("orthogonality", "biproduct-condition", "orthogonality on the biproduct", 500, nx=(1, 3), ny=(1, 3))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    f, g, mu, nu = c.vec(len(x)), c.vec(len(y)), c.vec(len(x)), c.vec(len(y))
    expect(inner(f + g, mu + nu) == inner(f, mu) + inner(g, nu), "inner product is not blockwise")
    m = K.biproduct_maps(x, y)
    h = f + g
    expect(is_orthogonal(K.pull(m["inj_x"], h), mu) == is_orthogonal(h, K.push(mu, m["inj_x"])),
           "injection reciprocity fails", f=f, g=g, mu=mu)


@law("orthogonality", "tensor-condition", "orthogonality of rank-one tensors", 500, nx=(1, 3), ny=(1, 3))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    f, g, mu, nu = c.vec(len(x), inf=0.05), c.vec(len(y), inf=0.05), c.vec(len(x), inf=0.05), c.vec(len(y), inf=0.05)
    expect(inner(K.tensor_vectors(f, g), K.tensor_vectors(mu, nu)) == inner(f, mu) * inner(g, nu),
           "<f x g | mu x nu> != <f|mu><g|nu>", f=f, g=g, mu=mu, nu=nu)
    if is_orthogonal(f, mu) and is_orthogonal(g, nu):
        expect(is_orthogonal(K.tensor_vectors(f, g), K.tensor_vectors(mu, nu)), "tensor of orthogonal pairs")


@law("orthogonality", "triple-polar", "G^ooo = G^o on a 1/4 grid of [0,2]^d", 40, n=(1, 2), g=(1, 3))
def _(c):
    w = c.web(c.p["n"], "x")
    G = c.gens(w, c.p["g"], grid=True)
    y = c.vec(len(w), zero=0.3)
    grid = [tuple(Fraction(v, 4) for v in pt) for pt in _grid_points(len(w))]
    members = [x for x in grid if bipolar_member(G, x)]
    in_triple = all(inner(x, y) <= 1 for x in members)
    expect(polar_member(G, y) == in_triple, "polar and polar of the bipolar disagree", G=G, y=y)


def _grid_points(d: int):
    if d == 0:
        yield ()
        return
    for v in range(9):
        for rest in _grid_points(d - 1):
            yield (v,) + rest


@law("orthogonality", "generator-sup", "sup over the bipolar is attained at a generator", 40, n=(1, 2), g=(1, 3))
def _(c):
    w = c.web(c.p["n"], "x")
    G = c.gens(w, c.p["g"], grid=True)
    v = c.vec(len(w), zero=0.2)
    s = sup_on_generators(G, v)
    grid = [tuple(Fraction(a, 4) for a in pt) for pt in _grid_points(len(w))]
    for x in grid:
        if bipolar_member(G, x):
            expect(inner(x, v) <= s, "bipolar member beats the generator max", G=G, v=v, x=x)
    if s > 0:
        expect(polar_member(G, tuple(a / s for a in v)), "v / max is not in the polar", G=G, v=v)


@law("orthogonality", "stable-tensor", "tensor of bipolars has the same polar", 40, nx=(1, 2), ny=(1, 2), g=(1, 3))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    G1, G2 = c.gens(x, c.p["g"]), c.gens(y, c.p["g"])
    base = tensor_gens(G1, G2)

    def inside(G):
        # convex combinations of generators, shrunk: members of the bipolar
        if not G.gens:
            return [tuple(ZERO for _ in G.web)]
        wts = [Fraction(c.rng.randint(0, 3)) for _ in G.gens]
        tot = sum(wts) or ONE
        shrink = Fraction(c.rng.randint(1, 4), 4)
        return [tuple(sum((wt * g[a] for wt, g in zip(wts, G.gens)), ZERO) / tot * shrink for a in range(len(G.web)))]

    p1, p2 = inside(G1), inside(G2)
    expect(all(bipolar_member(G1, p) for p in p1) and all(bipolar_member(G2, p) for p in p2),
           "sampled points are not in the bipolars", G1=G1, G2=G2)
    bigger = GenSet(base.web, list(base.gens) + [K.tensor_vectors(a, b) for a in p1 + list(G1.gens)
                                                 for b in p2 + list(G2.gens)])
    expect(base.finite() and bipolar_equal(base, bigger), "tensoring bipolar members changes the polar",
           G1=G1, G2=G2)


# =============================================================================================
# polar (bipolar closure and LP)
# =============================================================================================

@law("polar", "bipolar-contains-generators", "G and 0 lie in G^oo", 100, n=(1, 3), g=(0, 3))
def _(c):
    w = c.web(c.p["n"], "x")
    G = c.gens(w, c.p["g"])
    for g in G.gens:
        expect(bipolar_member(G, g), "generator not in its bipolar", G=G)
    expect(bipolar_member(G, (ZERO,) * len(w)), "0 not in the bipolar", G=G)
    expect(bipolar_equal(G, GenSet(w, list(G.gens) + [(ZERO,) * len(w)])), "adding 0 changes the bipolar", G=G)


@law("polar", "bipolar-convex", "bipolars are convex and down-closed", 100, n=(1, 3), g=(1, 3))
def _(c):
    w = c.web(c.p["n"], "x")
    G = c.gens(w, c.p["g"])
    wts = [Fraction(c.rng.randint(0, 3)) for _ in G.gens]
    tot = sum(wts) or ONE
    mix = tuple(sum((a * g[i] for a, g in zip(wts, G.gens)), ZERO) / tot for i in range(len(w)))
    below = tuple(v * Fraction(c.rng.randint(0, 4), 4) for v in mix)
    expect(bipolar_member(G, mix) and bipolar_member(G, below), "mixture not in the bipolar", G=G, x=mix)
    expect(bipolar_equal(G, GenSet(w, list(G.gens) + [mix])), "adding a mixture changes the bipolar", G=G)


def _random_lp(c: Ctx):
    n, m = c.p["n"], c.p["m"]
    G = [[c.scalar(0.35) for _ in range(n)] for _ in range(m)]
    obj = [c.scalar(0.2) for _ in range(n)]
    return G, obj


_lp = dict(n=(1, 3), m=(0, 4))


@law("polar", "lp-vs-brute-force", "simplex optimum = best basic feasible point", 200, **_lp)
def _(c):
    G, obj = _random_lp(c)
    sol = solve(G, obj)
    want, _ = O.brute_lp(G, obj)
    expect(sol.optimum == want, f"simplex {format_scalar(sol.optimum)} != brute force {format_scalar(want)}",
           G=[list(r) for r in G], c=obj)


@law("polar", "lp-witness", "the witness is feasible and optimal", 200, **_lp)
def _(c):
    G, obj = _random_lp(c)
    sol = solve(G, obj)
    y = sol.witness
    expect(all(v >= 0 for v in y) and all(inner(g, y) <= 1 for g in G), "witness infeasible", G=G, c=obj)
    if sol.bounded:
        expect(inner(obj, y) == sol.optimum, "witness does not attain the optimum", G=G, c=obj)
    else:
        r = sol.ray
        expect(all(v >= 0 for v in r) and all(sum((a * b for a, b in zip(g, r)), ZERO) <= 0 for g in G)
               and sum((a * b for a, b in zip(obj, r)), ZERO) > 0, "ray is not an improving direction", G=G, c=obj)


@law("polar", "lp-weak-duality", "dual multipliers bound the optimum", 200, **_lp)
def _(c):
    G, obj = _random_lp(c)
    sol = solve(G, obj)
    if not sol.bounded:
        return
    z = sol.dual
    n = len(obj)
    expect(all(v >= 0 for v in z), "negative dual multiplier", G=G, c=obj)
    expect(all(sum((z[i] * G[i][j] for i in range(len(G))), ZERO) >= obj[j] for j in range(n)),
           "dual multipliers infeasible", G=G, c=obj)
    expect(sum(z, ZERO) == sol.optimum, "no duality gap expected", G=G, c=obj)
    # any scaled-up feasible dual also bounds the optimum
    lam = [Fraction(c.rng.randint(0, 4), 2) for _ in G]
    if all(sum((lam[i] * G[i][j] for i in range(len(G))), ZERO) >= obj[j] for j in range(n)):
        expect(sol.optimum <= sum(lam, ZERO), "weak duality violated", G=G, c=obj)


# =============================================================================================
# glueing
# =============================================================================================

def _scale_to_morphism(k: Kernel, A: GlueObject, B_: GlueObject) -> Kernel:
    from .glueing import u_generators
    V = u_generators(B_)
    worst = ZERO
    for u in u_generators(A).gens:
        o = bipolar_sup(V, K.push(u, k)).optimum
        if o is INF:
            return K.zero(k.src, k.dst)
        worst = max(worst, o)
    return K.scale(1 / worst, k) if worst > 1 else k


@law("glueing", "identity-morphism", "identities are glue morphisms", 40, n=(1, 3), g=(1, 3))
def _(c):
    w = c.web(c.p["n"], "x")
    X = c.pcoh(w, c.p["g"])
    A = as_glue(X)
    expect(is_glue_morphism(K.identity(w), A, A), "identity is not a morphism", A=A)
    U = Points(w, X.gens.gens)
    R = Points(w, [c.vec(len(w)) for _ in range(2)])
    E = GlueObject(w, U, R, "exact")
    expect(is_glue_morphism(K.identity(w), E, E), "identity is not an exact-mode morphism")


@law("glueing", "compose-closed", "glue morphisms compose", 100, nx=(1, 3), ny=(1, 3), nz=(1, 3))
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")
    k1, k2 = c.kernel(x, y), c.kernel(y, z)
    # exact mode, components closed by construction
    UA = [c.vec(len(x)) for _ in range(2)]
    UB = [K.push(u, k1) for u in UA] + [c.vec(len(y))]
    UC = [K.push(u, k2) for u in UB] + [c.vec(len(z))]
    RC = [c.vec(len(z)) for _ in range(2)]
    RB = [K.pull(k2, r) for r in RC] + [c.vec(len(y))]
    RA = [K.pull(k1, r) for r in RB] + [c.vec(len(x))]
    A = GlueObject(x, Points(x, UA), Points(x, RA), "exact")
    Bo = GlueObject(y, Points(y, UB), Points(y, RB), "exact")
    C = GlueObject(z, Points(z, UC), Points(z, RC), "exact")
    expect(is_glue_morphism(k1, A, Bo) and is_glue_morphism(k2, Bo, C), "construction is not a morphism")
    expect(is_glue_morphism(K.compose(k1, k2), A, C), "composite is not a morphism", k1=k1, k2=k2)
    # bipolar mode
    PA, PB, PC = as_glue(c.pcoh(x, 2)), as_glue(c.pcoh(y, 2)), as_glue(c.pcoh(z, 2))
    j1 = _scale_to_morphism(k1, PA, PB)
    j2 = _scale_to_morphism(k2, PB, PC)
    expect(is_glue_morphism(j1, PA, PB) and is_glue_morphism(j2, PB, PC), "scaled kernels are not morphisms")
    expect(is_glue_morphism(K.compose(j1, j2), PA, PC), "bipolar composite is not a morphism", k1=j1, k2=j2)


@law("glueing", "tensor-closed", "tensor of glue morphisms", 60, nx=(1, 2), ny=(1, 2), nz=(1, 2), nw=(1, 2))
def _(c):
    x1, y1, x2, y2 = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "u"), c.web(c.p["nw"], "v")
    A1, B1, A2, B2 = (as_glue(c.pcoh(w, 2)) for w in (x1, y1, x2, y2))
    k1 = _scale_to_morphism(c.kernel(x1, y1), A1, B1)
    k2 = _scale_to_morphism(c.kernel(x2, y2), A2, B2)
    expect(is_glue_morphism(K.tensor(k1, k2), g_tensor(A1, A2), g_tensor(B1, B2)),
           "tensor of morphisms is not a morphism", k1=k1, k2=k2)


@law("glueing", "star-autonomy-shape", "dual(A x B) = dual A par dual B", 40, nx=(1, 2), ny=(1, 2))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    A, Bo = as_glue(c.pcoh(x, 2)), as_glue(c.pcoh(y, 2))
    expect(structurally_equal(dual(g_tensor(A, Bo)), g_par(dual(A), dual(Bo))), "shapes differ")
    expect(structurally_equal(dual(dual(A)), A), "dual is not an involution")
    E = GlueObject(x, Points(x, [c.vec(len(x))]), Points(x, [c.vec(len(x))]), "exact")
    expect(structurally_equal(dual(dual(E)), E), "exact dual is not an involution")


@law("glueing", "exact-biproduct", "projections, injections and mediating maps", 60, nx=(1, 3), ny=(1, 3), nz=(1, 3))
def _(c):
    x, y, z = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.web(c.p["nz"], "z")

    def obj(w):
        return GlueObject(w, Points(w, [c.vec(len(w)) for _ in range(2)]),
                          Points(w, [c.vec(len(w)) for _ in range(2)]), "exact")

    A, Bo = obj(x), obj(y)
    m = K.biproduct_maps(x, y)
    W, P = g_with(A, Bo), g_plus(A, Bo)
    expect(is_glue_morphism(m["proj_x"], W, A) and is_glue_morphism(m["proj_y"], W, Bo), "projection")
    expect(is_glue_morphism(m["inj_x"], A, P) and is_glue_morphism(m["inj_y"], Bo, P), "injection")
    f, g = c.kernel(z, x), c.kernel(z, y)
    UC = [c.vec(len(z))]
    RC = [K.pull(f, r) for r in A.R] + [K.pull(g, s) for s in Bo.R]
    A2 = GlueObject(x, Points(x, list(A.U) + [K.push(u, f) for u in UC]), A.R, "exact")
    B2 = GlueObject(y, Points(y, list(Bo.U) + [K.push(u, g) for u in UC]), Bo.R, "exact")
    C = GlueObject(z, Points(z, UC), Points(z, RC), "exact")
    expect(is_glue_morphism(f, C, A2) and is_glue_morphism(g, C, B2), "construction")
    expect(is_glue_morphism(K.copairing(f, g), C, g_with(A2, B2)), "mediating map into the product", f=f, g=g)


@law("glueing", "tight-objects", "tight objects are slack; examples", 40, n=(1, 2), g=(1, 3))
def _(c):
    w = c.web(c.p["n"], "x")
    X = c.pcoh(w, c.p["g"])
    from .duality import polar_vertices
    A = GlueObject(w, X.gens, polar_vertices(X.gens), "bipolar")
    expect(is_tight(A) and is_slack(A), "U with its polar is not tight", U=X.gens)
    one = GenSet(UNIT, [(ONE,)])
    expect(is_tight(GlueObject(UNIT, one, one, "bipolar")), "({*}, 1, 1) should be tight")
    expect(not is_tight(GlueObject(UNIT, GenSet(UNIT, [(Fraction(2),)]), one, "bipolar")),
           "({*}, 2, 1) should not be tight")


@law("glueing", "both-directions", "U-direction check agrees with the copoint direction", 60, nx=(1, 2), ny=(1, 2))
def _(c):
    x, y = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y")
    A, Bo = as_glue(c.pcoh(x, 2)), as_glue(c.pcoh(y, 2))
    k = c.kernel(x, y)
    if c.rng.random() < 0.5:
        k = _scale_to_morphism(k, A, Bo)
    fwd, bwd = is_glue_morphism_both(k, A, Bo)
    expect(fwd == bwd == is_glue_morphism(k, A, Bo), f"directions disagree ({fwd}, {bwd})", k=k)


@law("glueing", "why-not-candidate", "checker for the slack exponential's copoints", 20, n=(1, 2), N=(1, 2))
def _(c):
    w = c.web(c.p["n"], "x")
    N = c.p["N"]
    U = Points(w, [c.vec(len(w))])
    R = Points(w, [c.vec(len(w))])
    A = GlueObject(w, U, R, "exact")
    d, wk = B.dereliction(w, N), B.weakening(w, N)
    cand = [K.pull(d, r) for r in R] + [K.pull(wk, (ONE,))]
    expect(check_why_not_candidate(A, N, cand)["ok"], "minimal candidate rejected")
    expect(not check_why_not_candidate(A, N, cand[:-1])["ok"], "missing weakening accepted")
    e = exp_web(w, N)
    zero_h = (ZERO,) * (len(e) ** 2)
    expect(check_why_not_candidate(A, N, cand + [(ZERO,) * len(e)], [zero_h])["ok"],
           "closed candidate rejected")


# =============================================================================================
# pcoh
# =============================================================================================

_SHIPPED = (
    ("valid", ("a", "b"), [("1", "0"), ("0", "1")], True),
    ("zero-column", ("a", "b"), [("1", "0")], False),
    ("empty-gens", ("a",), [], False),
)


@law("pcoh", "validate-shipped", "per-atom bounds of the three shipped objects", 1)
def _(c):
    from .scalar import parse_scalar
    for name, labels, gens, want in _SHIPPED:
        w = Web(labels)
        X = PcohObject(w, GenSet(w, [[parse_scalar(v) for v in g] for g in gens]))
        expect(validate_pcoh(X).valid == want, f"{name}: wrong verdict")


_pc = dict(nx=(1, 2), g=(0, 2), N=(1, 2), M=(1, 2))


def _pcoh_base(c: Ctx) -> PcohObject:
    return c.pcoh(c.base(), c.p["g"])


@law("pcoh", "dereliction-morphism", "d is a Pcoh morphism !X -> X", 30, **_pc)
def _(c):
    X, N = _pcoh_base(c), c.degree()
    expect(pcoh_is_morphism(c.maps.dereliction(X.web, N), pcoh_bang(X, N), X), "d", X=X)


@law("pcoh", "storage-morphism", "s is a Pcoh morphism !X -> !!X", 20, **_pc)
def _(c):
    X, N, M = _pcoh_base(c), c.degree(), c.outer()
    bx = pcoh_bang(X, N)
    expect(pcoh_is_morphism(c.maps.storage(X.web, N, M), bx, pcoh_bang(bx, M)), "s", X=X)


@law("pcoh", "weakening-morphism", "w is a Pcoh morphism !X -> 1", 30, **_pc)
def _(c):
    X, N = _pcoh_base(c), c.degree()
    expect(pcoh_is_morphism(c.maps.weakening(X.web, N), pcoh_bang(X, N), pcoh_unit()), "w", X=X)


@law("pcoh", "contraction-morphism", "c is a Pcoh morphism !X -> !X x !X", 30, **_pc)
def _(c):
    X, N = _pcoh_base(c), c.degree()
    bx = pcoh_bang(X, N)
    expect(pcoh_is_morphism(c.maps.contraction(X.web, N), bx, pcoh_tensor(bx, bx)), "c", X=X)


@law("pcoh", "monoidal-morphisms", "m and m_I are Pcoh morphisms", 30, nx=(1, 2), ny=(1, 2), g=(0, 2), N=(1, 2))
def _(c):
    X = c.pcoh(c.web(c.p["nx"], "x"), c.p["g"])
    Y = c.pcoh(c.web(c.p["ny"], "y"), c.p["g"])
    N = c.p["N"]
    m = B.mon(X.web, Y.web, N)
    expect(pcoh_is_morphism(m, pcoh_tensor(pcoh_bang(X, N), pcoh_bang(Y, N)), pcoh_bang(pcoh_tensor(X, Y), N)),
           "m", X=X, Y=Y)
    for literal in (False, True):
        expect(pcoh_is_morphism(B.mon_unit(N, literal), pcoh_unit(), pcoh_bang(pcoh_unit(), N)), "m_I")


@law("pcoh", "bang-substochastic", "!t is a Pcoh morphism for sub-stochastic t", 30, nx=(1, 2), ny=(1, 2), N=(1, 2))
def _(c):
    x, y, N = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.p["N"]
    t = c.substochastic(x, y)
    n = len(x)
    if c.rng.random() < 0.5:
        X = PcohObject.of(x, [tuple(Fraction(1, n) for _ in x)])  # a box
    else:
        X = PcohObject.of(x, [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)])  # simplex
    Y = PcohObject.of(y, [tuple(ONE for _ in y)])
    expect(pcoh_is_morphism(t, X, Y), "t itself is not a morphism", t=t)
    for alg in B.ALGORITHMS:
        expect(pcoh_is_morphism(B.bang(t, N, alg), pcoh_bang(X, N), pcoh_bang(Y, N)), f"!t ({alg})", t=t)


@law("pcoh", "natural-vs-bang", "natural(t) = (a!/b!) !t", 100, nx=(1, 3), ny=(1, 3), N=(0, 3))
def _(c):
    x, y, N = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.p["N"]
    t = c.kernel(x, y)
    bt, nt = B.bang(t, N), B.natural_kernel(t, N)
    for (i, j), v in bt.items():
        a, b = bt.src.atoms[i], bt.dst.atoms[j]
        expect(nt[i, j] == v * Fraction(a.factorial(), b.factorial()), "natural != (a!/b!) bang", t=t)
    expect(nt.nnz() == bt.nnz(), "supports differ", t=t)


@law("pcoh", "multinomial-natural", "!t ; mult = mult ; natural(t)", 100, nx=(1, 3), ny=(1, 3), N=(0, 3))
def _(c):
    x, y, N = c.web(c.p["nx"], "x"), c.web(c.p["ny"], "y"), c.p["N"]
    t = c.kernel(x, y)
    lhs = K.compose(B.bang(t, N), B.multinomial_iso(exp_web(y, N)))
    rhs = K.compose(B.multinomial_iso(exp_web(x, N)), B.natural_kernel(t, N))
    expect_equal(lhs, rhs, "multinomial square does not commute", t=t)


@law("pcoh", "identity-and-scaling", "identity is a morphism, scaling by 3 is not", 20, n=(1, 2), g=(0, 2))
def _(c):
    X = c.pcoh(c.web(c.p["n"], "x"), c.p["g"])
    expect(pcoh_is_morphism(K.identity(X.web), X, X), "identity", X=X)
    expect(not pcoh_is_morphism(K.scale(3, K.identity(X.web)), X, X), "scaling by 3", X=X)
