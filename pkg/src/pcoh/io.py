"""JSON formats for kernels, vectors and glue objects.

Matrix file::

    {"src": ["a", "b"], "dst": ["c"], "entries": [[0, 0, "1/2"], [1, 0, "inf"]]}

Entries index the canonical atom order; zeros are omitted on output.

Glue-object file::

    {"web": ["a", "b"], "mode": "bipolar", "U": [["1", "0"], ["0", "1"]], "R": "polar(U)"}

``"R": "polar(U)"`` (or ``"U": "polar(R)"``) is allowed in bipolar mode.
A Pcoh object is a bipolar glue object whose ``R`` is ``"polar(U)"``; the
short form ``{"web": [...], "gens": [[...]]}`` is accepted as well.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .duality import GenSet
from .errors import ParseError, ShapeError
from .glueing import POLAR, GlueObject, PcohObject, Points
from .kernel import Kernel
from .scalar import format_scalar, parse_scalar
from .space import Web

__all__ = [
    "kernel_to_dict", "kernel_from_dict", "dumps_kernel", "loads_kernel",
    "load_kernel", "save_kernel", "glue_to_dict", "glue_from_dict",
    "load_glue", "load_pcoh", "pcoh_from_dict", "pcoh_to_dict", "vector_to_json",
    "vector_from_json", "read_json",
]


def _labels(value, what: str) -> Web:
    if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
        raise ParseError(f"{what} must be a list of string labels")
    try:
        return Web(value)
    except ShapeError as exc:
        raise ParseError(f"{what}: {exc}") from None


def _scalar_json(v) -> Any:
    if isinstance(v, int) and not isinstance(v, bool):
        v = str(v)
    if not isinstance(v, str):
        raise ParseError(f"scalars are written as strings, got {v!r}")
    return parse_scalar(v)


def vector_to_json(v) -> list[str]:
    return [format_scalar(a) for a in v]


def vector_from_json(value, n: int | None = None) -> tuple:
    if not isinstance(value, list):
        raise ParseError("a vector must be a list of scalar strings")
    v = tuple(_scalar_json(a) for a in value)
    if n is not None and len(v) != n:
        raise ParseError(f"vector of length {len(v)}, expected {n}")
    return v


def kernel_to_dict(k: Kernel) -> dict:
    return {
        "src": list(k.src.labels),
        "dst": list(k.dst.labels),
        "entries": [[i, j, format_scalar(v)] for (i, j), v in k.items()],
    }


def kernel_from_dict(d: Any) -> Kernel:
    if not isinstance(d, dict) or not {"src", "dst", "entries"} <= d.keys():
        raise ParseError('matrix files need "src", "dst" and "entries"')
    src, dst = _labels(d["src"], "src"), _labels(d["dst"], "dst")
    entries = []
    for e in d["entries"]:
        if (not isinstance(e, list) or len(e) != 3 or not all(isinstance(x, int) for x in e[:2])):
            raise ParseError(f"bad entry {e!r}: expected [i, j, \"p/q\"]")
        entries.append((e[0], e[1], _scalar_json(e[2])))
    try:
        return Kernel(src, dst, entries)
    except ShapeError as exc:
        raise ParseError(str(exc)) from None


def dumps_kernel(k: Kernel) -> str:
    return json.dumps(kernel_to_dict(k), indent=1) + "\n"


def loads_kernel(text: str) -> Kernel:
    return kernel_from_dict(_loads(text))


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return _loads(text)


def load_kernel(path) -> Kernel:
    return kernel_from_dict(read_json(path))


def save_kernel(k: Kernel, path):
    Path(path).write_text(dumps_kernel(k))


def _component(value, web: Web, mode: str, other: str):
    if value == f"polar({other})":
        if mode != "bipolar":
            raise ParseError("polar components are only allowed in bipolar mode")
        return POLAR
    if not isinstance(value, list):
        raise ParseError("components are lists of vectors or a polar(...) reference")
    vecs = [vector_from_json(v, len(web)) for v in value]
    return GenSet(web, vecs) if mode == "bipolar" else Points(web, vecs)


def glue_from_dict(d: Any) -> GlueObject:
    if not isinstance(d, dict) or "web" not in d:
        raise ParseError('glue-object files need "web"')
    web = _labels(d["web"], "web")
    mode = d.get("mode", "bipolar")
    if mode == "exact-set":
        mode = "exact"
    if mode not in ("bipolar", "exact"):
        raise ParseError(f"unknown mode {mode!r}")
    if "gens" in d:
        return GlueObject(web, _component(d["gens"], web, "bipolar", "R"), POLAR, "bipolar")
    if "U" not in d or "R" not in d:
        raise ParseError('glue-object files need "U" and "R"')
    U = _component(d["U"], web, mode, "R")
    R = _component(d["R"], web, mode, "U")
    if U is POLAR and R is POLAR:
        raise ParseError("U and R cannot both be polars of each other")
    return GlueObject(web, U, R, mode)


def glue_to_dict(A: GlueObject) -> dict:
    def comp(c, other):
        if c is POLAR:
            return f"polar({other})"
        vs = c.gens if isinstance(c, GenSet) else getattr(c, "vectors", None)
        if vs is None:
            raise ParseError("predicate-defined components cannot be serialized")
        return [vector_to_json(v) for v in vs]

    return {"web": list(A.web.labels), "mode": A.mode, "U": comp(A.U, "R"), "R": comp(A.R, "U")}


def load_glue(path) -> GlueObject:
    return glue_from_dict(read_json(path))


def pcoh_from_dict(d: Any) -> PcohObject:
    A = glue_from_dict(d)
    if A.mode != "bipolar" or A.R is not POLAR or not isinstance(A.U, GenSet):
        raise ParseError('a Pcoh object is a bipolar object with "R": "polar(U)"')
    return PcohObject(A.web, A.U)


def pcoh_to_dict(X: PcohObject) -> dict:
    return {"web": list(X.web.labels), "mode": "bipolar",
            "U": [vector_to_json(v) for v in X.gens.gens], "R": "polar(U)"}


def load_pcoh(path) -> PcohObject:
    return pcoh_from_dict(read_json(path))
