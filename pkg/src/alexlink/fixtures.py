"""The in-repo fixture corpus."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .config import RunConfig
from .diagram import LinkDiagram, parse_diagram, parse_pd, require_valid

ALIASES = {"4_1": "figure-eight", "5_1": "cinquefoil"}


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    diagram: LinkDiagram
    expected: dict = field(default_factory=dict)
    provenance: str = ""
    stretch: bool = False


def fixture_names(include_stretch: bool = True) -> list[str]:
    names = []
    for item in resources.files("alexlink").joinpath("fixtures").iterdir():
        if item.name.endswith(".json"):
            names.append(item.name[:-5])
    names.sort()
    if not include_stretch:
        names = [n for n in names if not load_fixture(n).stretch]
    return names


def load_fixture(name: str) -> FixtureEntry:
    name = ALIASES.get(name, name)
    path = resources.files("alexlink").joinpath("fixtures", f"{name}.json")
    if not path.is_file():
        raise KeyError(f"no fixture named {name!r}")
    data = json.loads(path.read_text())
    if "pd" in data:
        diagram = require_valid(parse_pd(data["pd"]))
    else:
        diagram = require_valid(LinkDiagram.from_dict(data["diagram"]))
    return FixtureEntry(
        data["name"],
        diagram,
        data.get("expected", {}),
        data.get("provenance", ""),
        bool(data.get("stretch", False)),
    )


def load_diagram(ref: str, check: bool = True) -> LinkDiagram:
    """Resolve ``fixture:name``, a path to a JSON/PD file, or inline text."""
    if ref.startswith("fixture:"):
        return load_fixture(ref[len("fixture:"):]).diagram
    try:
        with open(ref) as fh:
            text = fh.read()
    except OSError:
        text = ref
    return parse_diagram(text, check=check)


def corpus(include_stretch: bool = True) -> dict[str, LinkDiagram]:
    return {n: load_fixture(n).diagram for n in fixture_names(include_stretch)}


def expected_block(d: LinkDiagram, config: RunConfig | None = None) -> dict:
    """The golden values stored with a fixture.

    Evaluation points are left out because the configuration determines them.
    """
    from .distinguish import link_fingerprint

    data = link_fingerprint(d, config or RunConfig()).to_json()
    data["ideal_fingerprints"] = [
        {"k": f["k"], "values": f["values"]} for f in data["ideal_fingerprints"]
    ]
    del data["seed"]
    return data
