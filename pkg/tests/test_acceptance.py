"""Acceptance suite over the desk-scale types, one verdict line per criterion."""
import time

import pytest

from crystgarside.interval import structure
from crystgarside.verifiers import DESK_TYPES, PASS, SUITES, UNKNOWN, VerifyConfig, run

from conftest import ACCEPTANCE_LINES

CFG = VerifyConfig(seed=7, power=6, instances=20, samples=300, products=500)
TIME_LIMITS = {1: 5.0, 5: 60.0}
TITLES = {
    1: "root-system integrity",
    2: "isometry invariants",
    3: "verticality and shift",
    4: "weightedness of the x factors",
    5: "x-suite",
    6: "normal forms vs oracle",
    7: "projection and contraction",
    8: "no unknown verdicts",
}

_RESULTS = {}


def results(crit):
    if crit not in _RESULTS:
        per = {}
        for t in DESK_TYPES:
            t0 = time.perf_counter()
            checks = [(nm, c) for nm in SUITES[crit] for c in run(nm, t, CFG)]
            per[t] = (checks, time.perf_counter() - t0)
        _RESULTS[crit] = per
    return _RESULTS[crit]


def record(crit, problems, extra=""):
    status = "PASS" if not problems else "FAIL"
    line = f"criterion {crit} ({TITLES[crit]}): {status}"
    if extra:
        line += f" [{extra}]"
    if problems:
        line += " :: " + "; ".join(problems[:6]) + (" ..." if len(problems) > 6 else "")
    ACCEPTANCE_LINES[crit] = line
    print(line)
    return problems


@pytest.mark.slow
@pytest.mark.parametrize("crit", range(1, 8))
def test_criterion(crit):
    per = results(crit)
    problems = []
    for t, (checks, secs) in per.items():
        problems += [f"{t} {nm}:{c.id}={c.verdict} {c.witness}" for nm, c in checks if c.verdict != PASS]
        limit = TIME_LIMITS.get(crit)
        if limit is not None and secs > limit:
            problems.append(f"{t} took {secs:.1f}s > {limit:.0f}s")
    n = sum(len(c) for c, _ in per.values())
    slowest = max(s for _, s in per.values())
    assert not record(crit, problems, f"{n} checks, slowest type {slowest:.1f}s"), "\n".join(problems)


@pytest.mark.slow
def test_criterion_8_no_unknowns():
    problems = []
    n = 0
    for crit in range(1, 8):
        for t, (checks, _) in results(crit).items():
            n += len(checks)
            problems += [f"{t} {nm}:{c.id}" for nm, c in checks if c.verdict == UNKNOWN]
    for t in DESK_TYPES:
        problems += [f"{t} anomaly: {a}" for a in structure(t).anomalies]
    assert not record(8, problems, f"{n} checks scanned"), "\n".join(problems)
