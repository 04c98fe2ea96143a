"""Alexander module presentations built from diagrams.

Rows are indexed by arcs (generators), columns by crossings (relations).
The column of a crossing with roles (a1, a2, a3) carries
(1 - t_{k(a2)}) at a1, t_{k(a1)} at a2 and -1 at a3, where k is the
component labelling.  The Crowell vector sends an arc of component i to
t_i - 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .diagram import DiagramError, LinkDiagram, require_valid
from .laurent import IntLaurent, lp_evaluate, lp_substitute_tau, nu


@dataclass(frozen=True)
class CrowellCoord:
    """Coordinates of a Crowell image in the free summand plus the torsion part.

    ``free`` is a univariate IntLaurent at the reduced level and an integer
    after the sign specialization; ``tors`` has one entry per component
    other than the first.
    """

    free: object
    tors: tuple[int, ...]

    def to_json(self):
        return {"free": str(self.free), "tors": list(self.tors)}


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[str, ...]
    matrix: tuple[tuple[IntLaurent, ...], ...]  # rows = generators
    nvars: int
    crowell: tuple
    mu: int
    components: tuple[int, ...] = ()

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.generators), len(self.relations)

    def column(self, j: int) -> list[IntLaurent]:
        return [row[j] for row in self.matrix]

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": list(self.relations),
            "nvars": self.nvars,
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "crowell": [
                c.to_json() if isinstance(c, CrowellCoord) else str(c)
                for c in self.crowell
            ],
        }

    def render(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


@dataclass(frozen=True)
class NuPresentation:
    generators: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    coords: tuple[CrowellCoord, ...]
    mu: int


def _tors_unit(component: int, mu: int) -> tuple[int, ...]:
    v = [0] * (mu - 1)
    if component > 1:
        v[component - 2] = 1
    return tuple(v)


def build_presentation(d: LinkDiagram) -> Presentation:
    require_valid(d)
    mu = d.mu
    comp = d.component_of()
    gens = tuple(a.id for a in d.arcs)
    index = {a: i for i, a in enumerate(gens)}
    zero = IntLaurent.zero(mu)
    rows = [[zero] * len(d.crossings) for _ in gens]
    one = IntLaurent.one(mu)
    for j, c in enumerate(d.crossings):
        a1, a2, a3 = c.roles()
        t1 = IntLaurent.var(comp[a1], mu)
        t2 = IntLaurent.var(comp[a2], mu)
        # coefficients merge additively when roles coincide (kinks)
        rows[index[a1]][j] = rows[index[a1]][j] + (one - t2)
        rows[index[a2]][j] = rows[index[a2]][j] + t1
        rows[index[a3]][j] = rows[index[a3]][j] - one
    crowell = tuple(IntLaurent.var(comp[a], mu) - 1 for a in gens)
    p = Presentation(
        gens,
        tuple(c.id for c in d.crossings),
        tuple(tuple(r) for r in rows),
        mu,
        crowell,
        mu,
        tuple(comp[a] for a in gens),
    )
    if not check_crowell_compat(p):
        raise AssertionError("relation columns are not in the kernel of the Crowell map")
    return p


def check_crowell_compat(p: Presentation) -> bool:
    """Every relation column is killed by the Crowell vector."""
    ncols = len(p.relations)
    for j in range(ncols):
        if p.nvars == 1 and p.crowell and isinstance(p.crowell[0], CrowellCoord):
            free = IntLaurent.zero(1)
            tors = [IntLaurent.zero(1)] * (p.mu - 1)
            for row, c in zip(p.matrix, p.crowell):
                x = row[j]
                if not x:
                    continue
                free = free + x * c.free
                # the torsion summands are modules on which t acts trivially
                eps = x.coeff_sum()
                tors = [s + eps * k for s, k in zip(tors, c.tors)]
            if free or any(tors):
                return False
        else:
            total = IntLaurent.zero(p.nvars)
            for row, c in zip(p.matrix, p.crowell):
                if row[j]:
                    total = total + row[j] * c
            if total:
                return False
    return True


def reduce_tau(p: Presentation) -> Presentation:
    """Set every variable equal to t; Crowell values become free/torsion coordinates."""
    matrix = tuple(tuple(lp_substitute_tau(x) for x in row) for row in p.matrix)
    comps = p.components or tuple(1 for _ in p.generators)
    one = IntLaurent.one(1)
    crowell = tuple(CrowellCoord(one, _tors_unit(i, p.mu)) for i in comps)
    return Presentation(p.generators, p.relations, matrix, 1, crowell, p.mu, comps)


def specialize_nu(p: Presentation) -> NuPresentation:
    """Evaluate every entry at all variables equal to -1."""
    matrix = tuple(tuple(nu(x) for x in row) for row in p.matrix)
    comps = p.components or tuple(1 for _ in p.generators)
    coords = tuple(
        CrowellCoord(1, tuple(v % 2 for v in _tors_unit(i, p.mu))) for i in comps
    )
    return NuPresentation(p.generators, matrix, coords, p.mu)


def m0_presentation(p: Presentation, base: str) -> Presentation:
    """Presentation of the submodule spanned by differences a - base.

    Writing a = delta_a + base turns each relation into its delta part plus
    (column sum) * base.  Column sums vanish at the reduced level, so the
    delta relations are the original columns with the base row removed.
    """
    if p.nvars != 1:
        raise ValueError("m0_presentation expects a reduced presentation")
    if base not in p.generators:
        raise DiagramError(f"unknown base arc {base!r}")
    b = p.generators.index(base)
    ncols = len(p.relations)
    for j in range(ncols):
        total = IntLaurent.zero(1)
        for row in p.matrix:
            total = total + row[j]
        if total:
            raise AssertionError(f"column {p.relations[j]} has nonzero coefficient sum")
    keep = [i for i in range(len(p.generators)) if i != b]
    gens = tuple(f"d({p.generators[i]})" for i in keep)
    matrix = tuple(p.matrix[i] for i in keep)
    comps = tuple(p.components[i] for i in keep) if p.components else ()
    zero_coord = CrowellCoord(IntLaurent.zero(1), tuple([0] * (p.mu - 1)))
    crowell = tuple(
        CrowellCoord(
            IntLaurent.zero(1),
            tuple(x - y for x, y in zip(p.crowell[i].tors, p.crowell[b].tors)),
        )
        if isinstance(p.crowell[i], CrowellCoord)
        else zero_coord
        for i in keep
    )
    return Presentation(gens, p.relations, matrix, 1, crowell, p.mu, comps)


def evaluate_matrix(
    matrix: Sequence[Sequence[IntLaurent]], point: Sequence, modulus: int | None = None
) -> list[list]:
    return [[lp_evaluate(x, point, modulus) if x else 0 for x in row] for row in matrix]
