#!/usr/bin/env python3
"""Run the full built-in check suite and print the report.

Thin wrapper over the CLI so the suite can be run without installing the
console script: python scripts/run_demo.py [--format json] [--bound N]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from clone_forge.cli import main

if __name__ == "__main__":
    sys.exit(main(["demo", *sys.argv[1:]]))
