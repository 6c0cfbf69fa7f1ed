"""One test per acceptance criterion, each running its named suite at the stated tolerances."""
import pytest

from kaczmarz_rkhs.config import SuiteConfig
from kaczmarz_rkhs.suites import run_suite

CRITERIA = [
    (1, "kaczmarz-two-path"),
    (2, "kernel-equality"),
    (3, "reproducing"),
    (4, "parseval"),
    (5, "herglotz-roundtrip"),
    (6, "expsum"),
    (7, "clark"),
    (8, "weighted-dual"),
    (9, "wold"),
    (10, "psd"),
    (11, "spectrality"),
]


@pytest.mark.parametrize("number, suite", CRITERIA, ids=[f"{n:02d}-{s}" for n, s in CRITERIA])
def test_criterion(number, suite, capsys):
    report = run_suite(SuiteConfig(suite=suite))
    failures = report.failures()
    worst = ", ".join(f"{r.name} {r.error:.2e}>{r.bound:.0e}" for r in failures)
    line = f"criterion {number:2d} {suite:<19} {'PASS' if report.overall else 'FAIL'}"
    with capsys.disabled():
        print(f"\n{line}" + (f"  [{worst}]" if worst else ""))
    assert report.records, "suite produced no checks"
    assert report.overall, worst
