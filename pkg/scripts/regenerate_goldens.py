#!/usr/bin/env python3
"""Regenerate the CLI golden files under tests/golden.

Run from anywhere; the case table lives next to the comparison test so the
two cannot drift apart.  Regenerate only when an intended output change has
been reviewed, then commit the diff.
"""

import contextlib
import io
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT))

from hahnsolve.cli import main
from tests.test_cli import GOLDEN_CASES


def capture(argv: list[str]) -> str:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(argv)
    if code != 0:
        raise SystemExit(f"golden command exited {code}: {argv}")
    return out.getvalue()


if __name__ == "__main__":
    golden_dir = REPO_ROOT / "tests" / "golden"
    golden_dir.mkdir(parents=True, exist_ok=True)
    for name, argv in GOLDEN_CASES.items():
        (golden_dir / name).write_text(capture(argv))
        print(f"wrote {name}")
