"""Smoke test for the pyformdual extension.

Builds the extension with cargo if needed, loads it from a temporary
directory and exercises each entry point.

    python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def build():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "formdual-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libpyformdual.so"
    if not lib.exists():
        sys.exit(f"extension not found at {lib}")
    return lib


def load(lib):
    tmp = Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "pyformdual.so")
    sys.path.insert(0, str(tmp))
    import pyformdual

    return pyformdual


def main():
    fd = load(build())

    assert "theta8" in fd.catalog_names()
    theta = json.loads(fd.form_json("theta8"))
    assert theta["D"] == 8 and theta["k"] == 4 and len(theta["terms"]) == 14

    op = json.loads(fd.operator_json("z8", 2))
    assert (op["rows"], op["cols"]) == (28, 28)

    report = json.loads(fd.spectrum_json("theta8", 3))
    assert [Fraction(c) for c in report["min_poly"]] == [Fraction(-8, 3), Fraction(10, 3), 1]
    assert sorted(e["dim"] for e in report["eigen"]) == [8, 48]
    assert report["perfect"] is True

    # b(Theta) = -4 Theta
    image = json.loads(fd.apply("theta8", fd.form_json("theta8")))
    got = {tuple(t["idx"]): Fraction(t["c"]) for t in image["terms"]}
    want = {tuple(t["idx"]): -4 * Fraction(t["c"]) for t in theta["terms"]}
    assert got == want

    z8 = json.loads(fd.z8_json(2))
    assert z8["scale"] == "1/2"

    passed, report = fd.verify("g2")
    assert passed and json.loads(report)["failed"] == 0

    try:
        fd.operator_json("nope", 2)
    except ValueError as e:
        assert "unknown form" in str(e)
    else:
        raise AssertionError("unknown form accepted")

    print("pyformdual smoke test: ok")


if __name__ == "__main__":
    main()
