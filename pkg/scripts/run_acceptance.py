"""Run every acceptance suite and print one PASS/FAIL line per criterion.

    python3 scripts/run_acceptance.py [--seed S] [--verbose]
"""
import argparse
import sys

from kaczmarz_rkhs.config import DEFAULT_SEED, SUITES, SuiteConfig
from kaczmarz_rkhs.suites import run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    ap.add_argument("--verbose", "-v", action="store_true", help="list every check")
    args = ap.parse_args()
    ok = True
    for number, suite in enumerate(SUITES, 1):
        report = run_suite(SuiteConfig(suite=suite, seed=args.seed))
        ok &= report.overall
        secs = sum(r.seconds for r in report.records)
        print(f"criterion {number:2d} {suite:<19} {'PASS' if report.overall else 'FAIL'}  ({secs:.1f} s)")
        for r in report.records if args.verbose else report.failures():
            flag = "ok " if r.passed else "BAD"
            note = f"  # {r.note}" if r.note else ""
            print(f"    {flag} {r.name:<40} {r.error:.3e} vs {r.bound:.1e}{note}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
