import importlib.metadata
import os
import sys
from typing import List, Tuple

from .constants import LOG_FILE

REQUIRED_PACKAGES = ["pydantic", "PyYAML", "sympy", "networkx", "pyparsing"]
DEV_PACKAGES = ["pytest", "hypothesis", "mypy"]


def package_version(name: str) -> str:
    try:
        return importlib.metadata.version(name)
    except importlib.metadata.PackageNotFoundError:
        return ""


def smoke_test() -> List[Tuple[str, bool, str]]:
    """Cuntz-Krieger identities on C2 and the verdict for L2."""
    from .classifier import classify
    from .graph import make_family
    from .identities import check_identities

    checks: List[Tuple[str, bool, str]] = []
    try:
        passed, results = check_identities(make_family("C2"), max_len=2)
        failed = [r["criterion"] for r in results if not r["passed"]]
        checks.append(("identities on C2", passed, "all hold" if passed else f"failed: {', '.join(failed)}"))
    except Exception as e:
        checks.append(("identities on C2", False, str(e)))
    try:
        verdict = classify(make_family("Ln", 2))
        ok = verdict.group == "U+(2)"
        checks.append(("classify L2", ok, verdict.group))
    except Exception as e:
        checks.append(("classify L2", False, str(e)))
    return checks


def run_doctor() -> bool:
    """Check the interpreter, dependencies and a smoke computation. Returns True when all pass."""
    print("--- leavitt-sym Doctor Report ---")
    healthy = True

    if sys.version_info >= (3, 9):
        print(f"[✓] python: {sys.version.split()[0]}")
    else:
        print(f"[✗] python: {sys.version.split()[0]} (3.9 or newer required)")
        healthy = False

    for name in REQUIRED_PACKAGES:
        version = package_version(name)
        if version:
            print(f"[✓] {name}: Installed ({version})")
        else:
            print(f"[✗] {name}: Not installed")
            healthy = False

    for name in DEV_PACKAGES:
        version = package_version(name)
        if version:
            print(f"[✓] {name}: Installed ({version})")
        else:
            print(f"[!] {name}: Not installed (needed to run the test suite)")

    if os.path.exists(LOG_FILE):
        size_mb = os.path.getsize(LOG_FILE) / (1024 * 1024)
        if size_mb > 1.0:
            print(f"[!] Log file is getting large ({size_mb:.2f} MB). Consider rotating it: mv {LOG_FILE} {LOG_FILE}.bak")
        else:
            print(f"[✓] Log file size: {size_mb:.2f} MB")

    if healthy:
        print("\nSmoke Test:")
        for name, passed, message in smoke_test():
            print(f"  [{'✓' if passed else '✗'}] {name}: {message}")
            healthy = healthy and passed

    print("-" * 33)
    return healthy
