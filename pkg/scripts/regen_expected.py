"""Rewrite the expected block of every fixture from a fresh computation.

Run only after checking that a change in values is intended.
"""

from __future__ import annotations

import json
from pathlib import Path

from alexlink.fixtures import expected_block, fixture_names, load_fixture

ROOT = Path(__file__).resolve().parents[1] / "src" / "alexlink" / "fixtures"


def main() -> None:
    for name in fixture_names():
        path = ROOT / f"{name}.json"
        data = json.loads(path.read_text())
        data["expected"] = expected_block(load_fixture(name).diagram)
        path.write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")
        print(f"{name}: updated")


if __name__ == "__main__":
    main()
