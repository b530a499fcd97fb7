"""Command-line interface: ``pcoh <command> ...``.

Exit codes: 0 success, 1 a law or check failed, 2 usage or parse error,
3 a resource bound was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bang as B
from . import kernel as K
from .duality import polar_member, polar_vertices
from .errors import ModeError, ParseError, PcohError, ResourceError, ShapeError
from .glueing import pcoh_morphism_report, validate_pcoh
from .io import kernel_to_dict, load_kernel, load_pcoh, vector_from_json, vector_to_json
from .kernel import Kernel
from .laws import SUITES, StructureMaps, load_structure, run_suite
from .scalar import format_scalar
from .space import SumWeb, Web

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

STRUCTURE_NAMES = ("dereliction", "storage", "weakening", "contraction")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="write the result here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the output")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pcoh", description="Exact kernels, exponentials and probabilistic coherence spaces.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("laws", help="run randomised law suites")
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-web", type=int, default=None, help="cap on random web sizes")
    p.add_argument("--max-degree", type=int, default=None, help="cap on exponential degrees")
    p.add_argument("--cases-scale", type=float, default=1.0, help="multiply every law's case count")
    p.add_argument("--structure", action="append", default=[], metavar="NAME=FILE",
                   help="replace a structure map (dereliction, storage, weakening, contraction) "
                        "by the kernel in FILE")
    _common(p)

    p = sub.add_parser("bang", help="exponential of a kernel")
    p.add_argument("matrix")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--algorithm", choices=B.ALGORITHMS + ("both",), default="perm",
                   help="'both' computes with every algorithm and fails unless they agree")
    p.add_argument("--natural", action="store_true", help="emit the multinomial-weighted variant")
    _common(p)

    p = sub.add_parser("pcoh", help="Pcoh object and morphism checks")
    psub = p.add_subparsers(dest="pcoh_command", required=True, parser_class=_Parser)
    q = psub.add_parser("check-object")
    q.add_argument("object")
    _common(q)
    q = psub.add_parser("check-morphism")
    q.add_argument("matrix")
    q.add_argument("source")
    q.add_argument("target")
    _common(q)

    p = sub.add_parser("compose", help="compose kernels left to right")
    p.add_argument("matrices", nargs="+")
    _common(p)

    p = sub.add_parser("trace", help="trace out the right summand of a block kernel")
    p.add_argument("matrix")
    p.add_argument("--split", type=int, required=True,
                   help="number of source atoms in X (and of target atoms in Y); the rest form Z")
    p.add_argument("--split-dst", type=int, default=None, help="size of Y if different from X")
    _common(p)

    p = sub.add_parser("polar", help="polar of a generator set: vertices or a membership test")
    p.add_argument("object")
    p.add_argument("--member", metavar="VECTOR",
                   help="comma-separated scalars; report whether the vector lies in the polar")
    _common(p)
    return ap


# -- output ------------------------------------------------------------------------------

def _emit(args, payload: dict, text: str, elapsed: float | None = None):
    if args.timing and elapsed is not None:
        payload = dict(payload, wall_time=round(elapsed, 3))
        text = text + f"wall time: {elapsed:.3f}s\n"
    out = json.dumps(payload, indent=1, sort_keys=False) + "\n" if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _kernel_text(k: Kernel) -> str:
    lines = [f"{len(k.src)} x {len(k.dst)} kernel, {k.nnz()} nonzero entries"]
    for (i, j), v in k.items():
        lines.append(f"  {k.src.label(i)} -> {k.dst.label(j)}: {format_scalar(v)}")
    return "\n".join(lines) + "\n"


# -- commands ----------------------------------------------------------------------------

def _cmd_laws(args) -> int:
    overrides = {}
    for item in args.structure:
        name, sep, path = item.partition("=")
        if not sep or name not in STRUCTURE_NAMES:
            raise ParseError(f"--structure expects NAME=FILE with NAME in {', '.join(STRUCTURE_NAMES)}")
        overrides[name] = load_structure(name, load_kernel(path))
    maps = StructureMaps(overrides)
    rep = run_suite(args.suite, seed=args.seed, max_web=args.max_web, max_degree=args.max_degree,
                    maps=maps, cases_scale=args.cases_scale)
    payload = rep.to_dict(timing=args.timing)
    text = rep.to_text(timing=args.timing)
    if args.format == "json":
        out = json.dumps(payload, indent=1) + "\n"
    else:
        out = text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_bang(args) -> int:
    t0 = time.perf_counter()
    t = load_kernel(args.matrix)
    if args.natural:
        k = B.natural_kernel(t, args.max_degree)
    elif args.algorithm == "both":
        ks = [B.bang(t, args.max_degree, alg) for alg in B.ALGORITHMS]
        k = ks[0]
        if any(other != k for other in ks[1:]):
            print("pcoh: the exponential algorithms disagree", file=sys.stderr)
            return EXIT_FAIL
    else:
        k = B.bang(t, args.max_degree, args.algorithm)
    _emit(args, kernel_to_dict(k), _kernel_text(k), time.perf_counter() - t0)
    return EXIT_OK


def _cmd_compose(args) -> int:
    t0 = time.perf_counter()
    ks = [load_kernel(p) for p in args.matrices]
    acc = ks[0]
    for k in ks[1:]:
        if tuple(acc.dst.labels) != tuple(k.src.labels):
            raise ParseError("adjacent matrices do not share a web")
        acc = K.compose(acc, Kernel(acc.dst, k.dst, ((i, j, v) for (i, j), v in k.items())))
    _emit(args, kernel_to_dict(acc), _kernel_text(acc), time.perf_counter() - t0)
    return EXIT_OK


def _cmd_trace(args) -> int:
    t0 = time.perf_counter()
    k = load_kernel(args.matrix)
    nx = args.split
    ny = args.split_dst if args.split_dst is not None else nx
    nz = len(k.src) - nx
    if nz < 0 or len(k.dst) - ny != nz:
        raise ParseError("the split does not leave a common traced summand")
    src_l, dst_l = list(k.src.labels), list(k.dst.labels)
    if src_l[nx:] != dst_l[ny:]:
        raise ParseError("the traced summand must carry the same labels on both sides")
    x, y, z = Web(src_l[:nx]), Web(dst_l[:ny]), Web(src_l[nx:])
    blk = Kernel(SumWeb(x, z), SumWeb(y, z), ((i, j, v) for (i, j), v in k.items()))
    t = K.trace(blk)
    _emit(args, kernel_to_dict(t), _kernel_text(t), time.perf_counter() - t0)
    return EXIT_OK


def _cmd_polar(args) -> int:
    t0 = time.perf_counter()
    X = load_pcoh(args.object)
    if args.member is not None:
        y = vector_from_json([a.strip() for a in args.member.split(",")], len(X.web))
        ok = polar_member(X.gens, y)
        _emit(args, {"member": ok}, "yes\n" if ok else "no\n", time.perf_counter() - t0)
        return EXIT_OK if ok else EXIT_FAIL
    try:
        V = polar_vertices(X.gens)
    except ModeError as exc:
        payload = {"bounded": False, "message": str(exc)}
        _emit(args, payload, f"polar is unbounded: {exc}\n", time.perf_counter() - t0)
        return EXIT_FAIL
    payload = {"bounded": True, "web": list(X.web.labels), "vertices": [vector_to_json(v) for v in V.gens]}
    text = "polar vertices:\n" + "".join(f"  ({', '.join(vector_to_json(v))})\n" for v in V.gens)
    _emit(args, payload, text, time.perf_counter() - t0)
    return EXIT_OK


def _cmd_check_object(args) -> int:
    t0 = time.perf_counter()
    X = load_pcoh(args.object)
    rep = validate_pcoh(X)
    atoms = [{"atom": a.atom, "sup": format_scalar(a.sup), "polar_sup": format_scalar(a.polar_sup),
              "ok": a.ok} for a in rep.atoms]
    payload = {"valid": rep.valid, "atoms": atoms}
    bad = [a for a in rep.atoms if not a.ok]
    lines = ["valid" if rep.valid else "invalid: " + ", ".join(
        f"atom {a.atom} sup={format_scalar(a.sup)} (polar sup={format_scalar(a.polar_sup)})" for a in bad) if bad else "invalid: empty web"]
    for a in rep.atoms:
        lines.append(f"  {a.atom}: sup={format_scalar(a.sup)} polar_sup={format_scalar(a.polar_sup)}"
                     f" {'ok' if a.ok else 'FAIL'}")
    _emit(args, payload, "\n".join(lines) + "\n", time.perf_counter() - t0)
    return EXIT_OK if rep.valid else EXIT_FAIL


def _cmd_check_morphism(args) -> int:
    t0 = time.perf_counter()
    k = load_kernel(args.matrix)
    X, Y = load_pcoh(args.source), load_pcoh(args.target)
    if tuple(k.src.labels) != tuple(X.web.labels) or tuple(k.dst.labels) != tuple(Y.web.labels):
        raise ParseError("matrix webs do not match the objects")
    k = Kernel(X.web, Y.web, ((i, j, v) for (i, j), v in k.items()))
    verdicts = pcoh_morphism_report(k, X, Y)
    ok = all(v.ok for v in verdicts)
    payload = {"morphism": ok, "generators": [
        {"index": i, "image": vector_to_json(v.image), "optimum": format_scalar(v.optimum), "ok": v.ok}
        for i, v in enumerate(verdicts)]}
    lines = [f"morphism: {'yes' if ok else 'no'}"]
    for i, v in enumerate(verdicts):
        lines.append(f"  generator {i}: image ({', '.join(vector_to_json(v.image))}) "
                     f"optimum={format_scalar(v.optimum)} {'ok' if v.ok else 'FAIL'}")
    _emit(args, payload, "\n".join(lines) + "\n", time.perf_counter() - t0)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {"laws": _cmd_laws, "bang": _cmd_bang, "compose": _cmd_compose,
                "trace": _cmd_trace, "polar": _cmd_polar}
    try:
        if args.command == "pcoh":
            return _cmd_check_object(args) if args.pcoh_command == "check-object" else _cmd_check_morphism(args)
        return handlers[args.command](args)
    except ResourceError as exc:
        print(f"pcoh: resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, ShapeError, ModeError, PcohError, ValueError) as exc:
        print(f"pcoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
