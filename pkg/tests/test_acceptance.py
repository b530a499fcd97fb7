"""Acceptance criteria, each at its exact tolerance and time bound.

Every test prints one PASS/FAIL line; the lines are repeated in the
terminal summary (see conftest.py) so they show up without ``-s``.
"""
import subprocess
import sys
import time

import pytest

from pcoh.io import read_json
from pcoh.laws import run_suite

RESULTS: list[str] = []


def record(num: int, title: str, ok: bool, detail: str):
    line = f"criterion {num} {title}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def run_many(suites, seed=2024, only=None, **caps):
    laws, cases, failures = 0, 0, []
    start = time.perf_counter()
    for s in suites:
        rep = run_suite(s, seed=seed, only=only, **caps)
        laws += len(rep.laws)
        cases += rep.cases
        failures += [f"{f['suite']}/{f['law']}: {f['message']}" for f in rep.failures]
    return laws, cases, failures, time.perf_counter() - start


def check(num, title, bound, suites, **kw):
    laws, cases, failures, dt = run_many(suites, **kw)
    ok = not failures and dt < bound and laws > 0
    detail = f"{laws} laws, {cases} cases, {dt:.2f}s < {bound}s"
    if failures:
        detail += "; failures: " + "; ".join(failures)
    assert record(num, title, ok, detail), detail


def test_criterion_1_semiring():
    check(1, "semiring/star", 1, ["semiring"])


def test_criterion_2_category_biproduct_tensor():
    check(2, "category/biproduct/tensor", 10, ["category", "biproduct", "tensor"], max_web=4)


def test_criterion_3_trace():
    check(3, "trace", 10, ["trace"])


def test_criterion_4_exponential_oracles():
    check(4, "exponential oracle pair", 60, ["bang-functor"], max_web=3, max_degree=3,
          only=lambda l: l.name in ("perm-equals-coeff", "perm-brute-force", "permanent"))


def test_criterion_5_comonad_comonoid():
    check(5, "comonad/comonoid/k-distributivity", 120,
          ["bang-functor", "comonad", "comonoid", "k-distributivity"], max_web=3, max_degree=3,
          only=lambda l: l.suite != "bang-functor" or l.name in ("functorial", "graded"))


def test_criterion_6_orthogonality():
    check(6, "orthogonality", 30, ["orthogonality"])


def test_criterion_7_lp():
    check(7, "LP", 10, ["polar"], only=lambda l: l.name.startswith("lp-"))


def test_criterion_8_pcoh(data_dir):
    from pcoh.glueing import validate_pcoh
    from pcoh.io import pcoh_from_dict
    verdicts = {n: validate_pcoh(pcoh_from_dict(read_json(data_dir / f"{n}.json"))).valid
                for n in ("valid", "zero_column", "empty_gens")}
    want = {"valid": True, "zero_column": False, "empty_gens": False}
    laws, cases, failures, dt = run_many(["pcoh"], max_web=2, max_degree=2)
    ok = verdicts == want and not failures and dt < 120
    detail = f"shipped verdicts {verdicts}; {laws} laws, {cases} cases, {dt:.2f}s < 120s"
    if failures:
        detail += "; failures: " + "; ".join(failures)
    assert record(8, "Pcoh", ok, detail), detail


def test_criterion_9_cli_determinism(tmp_path, data_dir):
    start = time.perf_counter()
    outs = []
    for i in range(2):
        p = tmp_path / f"report{i}.json"
        r = subprocess.run([sys.executable, "-m", "pcoh.cli", "laws", "--suite", "glueing", "--seed", "5",
                            "--format", "json", "--out", str(p)], capture_output=True)
        assert r.returncode == 0, r.stderr
        outs.append(p.read_bytes())
    b = tmp_path / "bang.json"
    r = subprocess.run([sys.executable, "-m", "pcoh.cli", "bang", str(data_dir / "compose_left.json"),
                        "--max-degree", "2", "--format", "json", "--out", str(b)], capture_output=True)
    assert r.returncode == 0, r.stderr
    from pcoh.io import dumps_kernel, load_kernel
    round_trip = dumps_kernel(load_kernel(b)).encode() == b.read_bytes()
    dt = time.perf_counter() - start
    ok = outs[0] == outs[1] and round_trip and dt < 5
    detail = f"byte-identical={outs[0] == outs[1]}, round-trip={round_trip}, {dt:.2f}s < 5s"
    assert record(9, "CLI round-trip and determinism", ok, detail), detail
