"""One test per acceptance criterion, each run at its stated size and time bound.

Every test prints a single ``PASS``/``FAIL`` line; the lines are also
collected and repeated in the terminal summary.
"""

import time

import pytest

from ratgroup.verify import SUITES

REPORT: list[str] = []

CRITERIA = [
    # (number, label, suite, kwargs, bound in seconds, minimum case count)
    (1, "hilbert hotel", "hilbert", {"count": 50}, 5, 54),
    (2, "commutator identity", "commutator", {"count": 50}, 10, 50),
    (3, "simplicity step", "simplicity-step", {"count": 50}, 15, 50),
    (4, "small-support factorization", "small-support", {"count": 20, "depth": 12}, 5, 20),
    (5, "fp canonical facts", "fp-canonical", {}, 5, 6 * 9),
    (6, "oblivious-product closure", "oblivious-product", {"count": 200, "oracle_count": 200}, 30, 4 * 200 + 200),
    (7, "canonicity and semantics", "canonicity", {"count": 200, "depth": 12}, 30, 200),
    (8, "group axioms", "group-axioms", {"count": 200}, 20, 200 * 5),
]


@pytest.mark.parametrize("number, label, suite, kwargs, bound, min_cases", CRITERIA,
                         ids=[f"criterion-{c[0]}-{c[2]}" for c in CRITERIA])
def test_criterion(number, label, suite, kwargs, bound, min_cases):
    start = time.perf_counter()
    result = SUITES[suite](seed=0, **kwargs)
    elapsed = time.perf_counter() - start
    cases = len(result.cases)
    failures = result.failures
    ok = not failures and elapsed < bound and cases >= min_cases
    status = "PASS" if ok else "FAIL"
    line = (f"{status} criterion {number} ({label}): {cases} cases, "
            f"{len(failures)} failed, {elapsed:.2f}s (bound {bound}s)")
    REPORT.append(line)
    print("\n" + line)
    for case in failures[:5]:
        print(f"  counterexample {case.name}: {case.witness}")
    assert not failures, failures[0]
    assert cases >= min_cases
    assert elapsed < bound, f"{elapsed:.2f}s exceeds {bound}s"
