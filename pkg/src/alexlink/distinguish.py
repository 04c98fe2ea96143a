"""Invariant bundles of link diagrams and permutation-aware comparison."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace

from .alexander import build_presentation, reduce_tau, specialize_nu
from .config import RunConfig
from .diagram import LinkDiagram, check_permutation, require_valid
from .laurent import IntLaurent
from .laurent import nu as nu_eval
from .modulealg import (
    IdealFingerprint,
    NuFingerprint,
    RatSmithResult,
    alexander_polys,
    eliminate_units,
    evaluation_points,
    fitting_fingerprints,
    nu_fingerprint,
    smith_rational_univariate,
)
from .quandle import (
    AffineQuandleSpec,
    coloring_matrix,
    count_from_matrix,
    displacement_rational_factors,
    orbit_count,
)


class PermutationGuardError(RuntimeError):
    """Too many components to try every relabelling."""


@dataclass(frozen=True)
class TauFingerprint:
    mu: int
    rational: RatSmithResult
    deltas: tuple[str, ...]
    nu: NuFingerprint
    ideals: tuple[IdealFingerprint, ...]
    colorings: tuple[tuple[int, int, int], ...]  # (n, u, count)
    orbits: int
    displacement: RatSmithResult
    seed: int = 0
    # unit-eliminated multivariate matrix, kept for re-evaluation under relabelling
    ideal_matrix: tuple = field(default=(), compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "reduced_module": self.rational.to_json(),
            "alexander_polynomials": list(self.deltas),
            "nu": self.nu.to_json(),
            "ideal_fingerprints": [f.to_json() for f in self.ideals],
            "colorings": [{"n": n, "u": u, "count": c} for n, u, c in self.colorings],
            "orbit_count": self.orbits,
            "displacement": self.displacement.to_json(),
            "seed": self.seed,
        }

    def render(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def bundle_key(self) -> tuple:
        """Everything that must survive Reidemeister moves."""
        return (
            self.mu,
            self.rational,
            self.deltas,
            self.nu,
            self.ideals,
            self.colorings,
            self.orbits,
            self.displacement,
        )


def link_fingerprint(d: LinkDiagram, config: RunConfig | None = None) -> TauFingerprint:
    config = config or RunConfig()
    require_valid(d)
    multi = build_presentation(d)
    reduced = reduce_tau(multi)

    red_matrix, kept, _ = eliminate_units(reduced.matrix)
    rational = smith_rational_univariate(red_matrix, len(kept))
    deltas = tuple(
        str(x)
        for x in alexander_polys(
            reduced, max_rows=config.max_minor_rows, max_size=config.max_minor_size
        )
    )

    # surviving generators keep their Crowell images, so coordinates restrict
    nu_pres = specialize_nu(reduced)
    nu_matrix = [[_nu_value(x) for x in row] for row in red_matrix]
    coords = [nu_pres.coords[i] for i in kept]
    nu = nu_fingerprint(nu_matrix, coords, d.mu, cap=config.torsion_cap)

    multi_matrix, _, _ = eliminate_units(multi.matrix)
    ks = list(range(1, config.ideal_k_max + 1))
    points = evaluation_points(d.mu, config.point_values, config.max_points)
    ideals = tuple(fitting_fingerprints(multi_matrix, ks, points))

    colorings = []
    for n, u in config.battery:
        spec = AffineQuandleSpec(n, u)
        colorings.append((n, u, count_from_matrix(coloring_matrix(red_matrix, spec), len(kept), n)))

    orbits = orbit_count(d)
    displacement = displacement_rational_factors(reduced, d.arcs[0].id)
    return TauFingerprint(
        d.mu,
        rational,
        deltas,
        nu,
        ideals,
        tuple(colorings),
        orbits,
        displacement,
        config.seed,
        tuple(tuple(r) for r in multi_matrix),
    )


def _nu_value(x: IntLaurent) -> int:
    return nu_eval(x) if x else 0


def permute_components(f: TauFingerprint, perm: dict[int, int]) -> TauFingerprint:
    """Fingerprint of the same link with component i renamed perm[i].

    Only the torsion image and the multivariate ideal evaluations move.
    """
    check_permutation(perm, f.mu)
    nu = f.nu.permuted(perm)
    if not f.ideals:
        return replace(f, nu=nu)
    # the relabelled module is presented by the same matrix with t_i renamed t_perm[i]
    matrix = tuple(tuple(x.permute_vars(perm) for x in row) for row in f.ideal_matrix)
    ks = [i.k for i in f.ideals]
    ideals = tuple(fitting_fingerprints(matrix, ks, f.ideals[0].points))
    return replace(f, nu=nu, ideals=ideals, ideal_matrix=matrix)


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------

LEVELS = {
    "orbit-count": "quandle",
    "reduced-module": "reduced",
    "alexander-polynomials": "reduced",
    "nu-group": "nu",
    "nu-torsion-image": "nu",
    "colorings": "reduced",
    "displacement": "reduced",
}


@dataclass(frozen=True)
class Witness:
    name: str
    universal: bool
    level: str
    details: str

    def to_json(self) -> dict:
        return {
            "invariant": self.name,
            "universal": self.universal,
            "level": self.level,
            "details": self.details,
        }


@dataclass(frozen=True)
class ComparisonReport:
    verdict: str
    witnesses: tuple[Witness, ...]
    permutations_tested: int
    outcomes: tuple[tuple[str, int], ...] = ()  # invariant -> permutations where it differs
    note: str = ""

    @property
    def distinguished(self) -> bool:
        return self.verdict == "distinguished"

    def witness_names(self) -> list[str]:
        return [w.name for w in self.witnesses]

    def universal_witnesses(self) -> list[str]:
        return [w.name for w in self.witnesses if w.universal]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "permutations_tested": self.permutations_tested,
            "outcomes": {name: n for name, n in self.outcomes},
            "note": self.note,
        }

    def render(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def table(self) -> str:
        lines = [f"verdict: {self.verdict} ({self.permutations_tested} permutation(s) tested)"]
        width = max([len(n) for n, _ in self.outcomes] + [9])
        lines.append(f"{'invariant'.ljust(width)}  differs-under")
        for name, n in self.outcomes:
            lines.append(f"{name.ljust(width)}  {n}/{self.permutations_tested}")
        for w in self.witnesses:
            tag = "universal" if w.universal else "partial"
            lines.append(f"witness {w.name} [{w.level}, {tag}]: {w.details}")
        if self.note:
            lines.append(self.note)
        return "\n".join(lines)


def _fixed_parts(f: TauFingerprint) -> dict[str, object]:
    return {
        "reduced-module": f.rational,
        "alexander-polynomials": f.deltas,
        "nu-group": (f.nu.rank, f.nu.torsion),
        "colorings": f.colorings,
        "displacement": f.displacement,
    }


def _moving_parts(f: TauFingerprint) -> dict[str, object]:
    parts: dict[str, object] = {"nu-torsion-image": f.nu.torsion_image}
    for ideal in f.ideals:
        parts[f"E{ideal.k}-evaluation"] = ideal.values
    return parts


def compare(
    d1: LinkDiagram,
    d2: LinkDiagram,
    allow_permutations: bool = False,
    config: RunConfig | None = None,
) -> ComparisonReport:
    config = config or RunConfig()
    require_valid(d1)
    require_valid(d2)
    if d1.mu != d2.mu:
        w = Witness(
            "orbit-count",
            True,
            LEVELS["orbit-count"],
            f"{orbit_count(d1)} orbits vs {orbit_count(d2)} orbits",
        )
        return ComparisonReport("distinguished", (w,), 0, (("orbit-count", 0),))
    mu = d1.mu
    if allow_permutations and mu > config.permutation_guard:
        raise PermutationGuardError(
            f"{mu} components exceed the permutation guard of {config.permutation_guard}"
        )
    f1 = link_fingerprint(d1, config)
    f2 = link_fingerprint(d2, config)

    if allow_permutations:
        perms = [
            {i + 1: p[i] for i in range(mu)}
            for p in itertools.permutations(range(1, mu + 1))
        ]
    else:
        perms = [{i: i for i in range(1, mu + 1)}]

    counts: dict[str, int] = {}
    witnesses = []
    fixed1, fixed2 = _fixed_parts(f1), _fixed_parts(f2)
    for name in fixed1:
        differs = fixed1[name] != fixed2[name]
        counts[name] = len(perms) if differs else 0
        if differs:
            witnesses.append(
                Witness(name, True, LEVELS[name], f"{_short(fixed1[name])} vs {_short(fixed2[name])}")
            )

    moving1 = _moving_parts(f1)
    first_diff: dict[str, str] = {}
    for perm in perms:
        moving2 = _moving_parts(permute_components(f2, perm))
        for name, value in moving1.items():
            if value != moving2.get(name):
                counts[name] = counts.get(name, 0) + 1
                first_diff.setdefault(name, _perm_str(perm))
            else:
                counts.setdefault(name, 0)
    for name in moving1:
        n = counts[name]
        if n:
            level = "nu" if name.startswith("nu") else "multivariate"
            witnesses.append(
                Witness(
                    name,
                    n == len(perms),
                    level,
                    f"differs under {n} of {len(perms)} component relabelling(s), "
                    f"first at {first_diff[name]}",
                )
            )
    distinguished = any(w.universal for w in witnesses)
    note = ""
    if not distinguished:
        note = "no invariant in the bundle separates the links; this does not show they are equivalent"
    return ComparisonReport(
        "distinguished" if distinguished else "not distinguished",
        tuple(witnesses),
        len(perms),
        tuple(sorted(counts.items())),
        note,
    )


def _perm_str(perm: dict[int, int]) -> str:
    return "[" + " ".join(str(perm[i]) for i in sorted(perm)) + "]"


def _short(value) -> str:
    if isinstance(value, RatSmithResult):
        return f"rank {value.rank}, factors {value.factor_strings()}"
    if isinstance(value, tuple) and value and isinstance(value[0], tuple):
        return ", ".join(f"({n},{u})->{c}" for n, u, c in value)
    return str(value)
