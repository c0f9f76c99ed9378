#!/usr/bin/env python3
"""
Test runner for the GIE Toolkit.

    python run_tests.py unit|integration|performance|quick|coverage|all [-v]
"""

import sys
import subprocess
import argparse

SUITES = {
    "unit": (["tests/unit", "-m", "unit"], "Unit Tests"),
    "integration": (["tests/integration", "-m", "integration"], "Integration Tests"),
    "performance": (["tests/performance", "-m", "performance", "--benchmark-sort=mean"], "Performance Tests"),
    "quick": (["tests/unit", "tests/integration", "-m", "not slow", "--no-cov"], "Quick Suite (no slow tests)"),
    "coverage": (
        ["tests/unit", "tests/integration", "--cov=src", "--cov-report=term-missing", "--cov-report=xml"],
        "Unit and Integration Tests with Coverage",
    ),
}


def run_suite(name: str, verbose: bool) -> bool:
    args, description = SUITES[name]
    cmd = [sys.executable, "-m", "pytest", "-v" if verbose else "-q"] + args
    print(f"Running: {description}")
    if verbose:
        print(f"Command: {' '.join(cmd)}")
    try:
        return subprocess.run(cmd).returncode == 0
    except FileNotFoundError:
        print("pytest not found, install requirements.txt first")
        return False


def main():
    parser = argparse.ArgumentParser(description="Run GIE Toolkit tests")
    parser.add_argument("test_type", choices=sorted(SUITES) + ["all"], help="Suite to run")
    parser.add_argument("--verbose", "-v", action="store_true", help="Verbose pytest output")
    args = parser.parse_args()

    names = ["unit", "integration", "performance"] if args.test_type == "all" else [args.test_type]
    failed = [name for name in names if not run_suite(name, args.verbose)]

    if failed:
        print(f"\nFailed suites: {', '.join(failed)}")
        return 1
    print("\nAll tests completed successfully")
    return 0


if __name__ == "__main__":
    sys.exit(main())
