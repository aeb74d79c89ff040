"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (collected into the terminal
summary as well) and asserts the criterion at its stated tolerance.
"""

import time

import pytest

from starloop.cli import report as rpt
from starloop.cli.config import RunConfig
from starloop.cli.main import run
from starloop.cli.suites import SUITES

LINES = []

CRITERIA = {
    1: ("disk-verify", ["moyal_commutator", "star_associativity"], 60),
    2: ("disk-verify", ["trace_property"], 60),
    3: ("disk-verify", ["trace_defect_m1", "trace_defect_m2", "trace_defect_m3", "trace_defect_m4",
                        "profile_independence"], 120),
    4: ("winding", ["generator_wzw", "generator_winding", "generator_agreement",
                    "repeated_2_wzw", "repeated_2_winding", "repeated_2_agreement"], 600),
    5: ("cocycle", ["lie_cocycle_star_vs_boundary", "lie_cocycle_closed_form", "jacobi"], 300),
    6: ("cocycle", ["group_cocycle"], 900),
    7: ("cocycle", ["det_unipotent", "det_multiplicative", "path_independence"], None),
    8: ("fuzzy", ["fuzzy_commutators", "fuzzy_casimir", "fuzzy_cocycle_parity"], None),
    9: ("deform", ["lundberg_antisymmetry", "lundberg_cocycle_identity", "shift_cocycle",
                   "deform_closed_form", "hs_trend", "commutator_defect_trend"], 600),
}


@pytest.fixture(scope="module")
def results():
    cfg = RunConfig()
    out = {}
    for name, suite in SUITES.items():
        start = time.perf_counter()
        checks, diags = suite(cfg)
        out[name] = ({c["name"]: c for c in checks}, diags, time.perf_counter() - start)
    return out


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES.append(line)
    print(line)


def _fmt(c):
    r = c.get("residual")
    r = "n/a" if r is None else f"{r:.3g}"
    t = c.get("tolerance")
    t = "" if t is None else f"/{t:.0e}"
    return f"{c['name']}={'ok' if c['passed'] else 'no'}({r}{t})"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, results):
    suite, names, limit = CRITERIA[n]
    checks, _, seconds = results[suite]
    missing = [k for k in names if k not in checks]
    picked = [checks[k] for k in names if k in checks]
    ok = not missing and all(c["passed"] for c in picked)
    timing_ok = limit is None or seconds < limit
    detail = " ".join(_fmt(c) for c in picked)
    if missing:
        detail += f" missing={missing}"
    detail += f" suite_time={seconds:.1f}s" + ("" if limit is None else f"<{limit}s")
    record(n, ok and timing_ok, detail)
    assert not missing, f"checks not produced: {missing}"
    assert timing_ok, f"suite {suite} took {seconds:.1f}s, limit {limit}s"
    assert ok, detail


def test_criterion_10_determinism():
    cfg = RunConfig(seed=7)
    a = rpt.dumps(rpt.without_timing(run("all", cfg)))
    b = rpt.dumps(rpt.without_timing(run("all", cfg)))
    record(10, a == b, f"report bytes={len(a)} identical={a == b}")
    assert a == b
