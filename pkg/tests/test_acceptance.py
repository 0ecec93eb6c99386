"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for the bare report, or
under pytest, where the lines are repeated in the terminal summary.
"""

import sys

import pytest

from cospanfib.suites import SuiteConfig, run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:
    ACCEPTANCE_LINES = []

CRITERIA = [
    (1, "associativity", "strict associativity, exhaustive window plus seeded random triples"),
    (2, "reduced-composite", "reduced-composite regression, bit-exact"),
    (3, "automorphisms", "automorphism order equals closed count factorial"),
    (4, "lcart-reduced", "locally R-Cartesian iff reduced, with duality"),
    (5, "non-cartesian", "two locally R-Cartesian maps with a non-locally-Cartesian composite"),
    (6, "terminal", "terminal object of reduced injective cospans, hom(2, 2) count"),
    (7, "agreement", "three (co)Cartesian deciders agree edge by edge at caps 3 and 4"),
    (8, "key-lemma", "fiber-under-vertex objects connected with H_1 = H_2 = 0"),
    (9, "under-iso", "under-category comparison bijective, corrupted control fails"),
    (10, "fiber-inclusions", "end-vertex fiber inclusions are homology isomorphisms"),
    (11, "homology", "homology engine sanity with three SNF methods"),
]

CONFIG = SuiteConfig(n=2, closed_bound=3, cap=4, seed=0)
SECONDS: dict[str, float] = {}


def report(number, suite, what):
    res = run_suite(suite, CONFIG)
    line = f"criterion {number:2d} [{'PASS' if res.ok else 'FAIL'}] {suite}: {what}"
    if not res.ok:
        line += f" -- counterexample: {res.counterexample}"
    SECONDS[suite] = res.seconds
    print(line)
    ACCEPTANCE_LINES.append(line)
    return res


@pytest.mark.parametrize("number,suite,what", CRITERIA, ids=[f"{n}-{s}" for n, s, _ in CRITERIA])
def test_criterion(number, suite, what):
    res = report(number, suite, what)
    assert res.ok, res.counterexample


def test_runtime_budgets():
    # associativity < 30 s, automorphisms < 10 s, key-lemma < 5 min
    for suite, budget in (("associativity", 30), ("automorphisms", 10), ("key-lemma", 300)):
        seconds = SECONDS[suite] if suite in SECONDS else run_suite(suite, CONFIG).seconds
        assert seconds < budget, f"{suite} took {seconds:.1f} s"


if __name__ == "__main__":
    results = [report(*c) for c in CRITERIA]
    sys.exit(0 if all(r.ok for r in results) else 1)
