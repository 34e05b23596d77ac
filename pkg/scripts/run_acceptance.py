#!/usr/bin/env python3
"""Run the acceptance criteria without pytest and print one line per criterion."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import test_acceptance  # noqa: E402

if __name__ == "__main__":
    sys.exit(1 if test_acceptance.run_all() else 0)
