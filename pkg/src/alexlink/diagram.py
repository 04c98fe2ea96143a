"""Combinatorial oriented link diagrams.

A diagram is a list of arcs (maximal overpasses, each labelled with its
component) and a list of crossings.  A crossing records its over arc, the
under arc entering it, the under arc leaving it, and its writhe.  The under
arcs at a crossing that play the roles of the second and third relation
entries are derived from the writhe (see ``Crossing.roles``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Iterable


class DiagramError(ValueError):
    """Raised for malformed diagram input or an illegal rewrite."""


@dataclass(frozen=True)
class Arc:
    id: str
    component: int


@dataclass(frozen=True)
class Crossing:
    id: str
    over: str
    under_in: str
    under_out: str
    writhe: int

    def roles(self) -> tuple[str, str, str]:
        """Return (a1, a2, a3): over arc, then the two under arcs in relation order.

        With writhe +1 the entering under arc comes second; with writhe -1
        the exiting one does.  Either way the quandle relation is
        a3 = a2 |> a1.
        """
        if self.writhe == 1:
            return self.over, self.under_in, self.under_out
        return self.over, self.under_out, self.under_in


@dataclass(frozen=True)
class LinkDiagram:
    mu: int
    arcs: tuple[Arc, ...]
    crossings: tuple[Crossing, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "crossings", tuple(self.crossings))

    # lookups
    def arc_ids(self) -> list[str]:
        return [a.id for a in self.arcs]

    def component_of(self) -> dict[str, int]:
        return {a.id: a.component for a in self.arcs}

    def arc(self, arc_id: str) -> Arc:
        for a in self.arcs:
            if a.id == arc_id:
                return a
        raise DiagramError(f"unknown arc {arc_id!r}")

    def crossing(self, crossing_id: str) -> Crossing:
        for c in self.crossings:
            if c.id == crossing_id:
                return c
        raise DiagramError(f"unknown crossing {crossing_id!r}")

    def ending_at(self) -> dict[str, Crossing]:
        """Map arc id -> crossing where the arc terminates (it is under_in there)."""
        return {c.under_in: c for c in self.crossings}

    def starting_at(self) -> dict[str, Crossing]:
        """Map arc id -> crossing where the arc begins (it is under_out there)."""
        return {c.under_out: c for c in self.crossings}

    def over_count(self) -> dict[str, int]:
        counts = {a.id: 0 for a in self.arcs}
        for c in self.crossings:
            counts[c.over] = counts.get(c.over, 0) + 1
        return counts

    def relabel_components(self, perm: dict[int, int]) -> LinkDiagram:
        """Component i becomes component perm[i]."""
        check_permutation(perm, self.mu)
        return replace(
            self, arcs=tuple(Arc(a.id, perm[a.component]) for a in self.arcs)
        )

    # serialization
    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "arcs": [{"id": a.id, "component": a.component} for a in self.arcs],
            "crossings": [
                {
                    "id": c.id,
                    "over": c.over,
                    "under_in": c.under_in,
                    "under_out": c.under_out,
                    "writhe": c.writhe,
                }
                for c in self.crossings
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> LinkDiagram:
        try:
            arcs = tuple(Arc(str(a["id"]), int(a["component"])) for a in data["arcs"])
            crossings = tuple(
                Crossing(
                    str(c["id"]),
                    str(c["over"]),
                    str(c["under_in"]),
                    str(c["under_out"]),
                    int(c["writhe"]),
                )
                for c in data.get("crossings", [])
            )
            return cls(int(data["mu"]), arcs, crossings)
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"diagram JSON is missing a field: {exc}") from exc


def check_permutation(perm: dict[int, int], mu: int) -> None:
    if sorted(perm) != list(range(1, mu + 1)) or sorted(perm.values()) != list(
        range(1, mu + 1)
    ):
        raise DiagramError(f"{perm} is not a permutation of 1..{mu}")


def render(d: LinkDiagram) -> str:
    return json.dumps(d.to_dict(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Validation and tracing
# ---------------------------------------------------------------------------


def validate(d: LinkDiagram) -> list[str]:
    problems: list[str] = []
    if d.mu < 1:
        problems.append(f"mu must be positive, got {d.mu}")
    ids = [a.id for a in d.arcs]
    seen = set()
    for a in ids:
        if a in seen:
            problems.append(f"duplicate arc id {a}")
        seen.add(a)
    comp = {a.id: a.component for a in d.arcs}
    for a in d.arcs:
        if not 1 <= a.component <= d.mu:
            problems.append(f"arc {a.id} has component {a.component} outside 1..{d.mu}")
    present = {a.component for a in d.arcs}
    for i in range(1, d.mu + 1):
        if i not in present:
            problems.append(f"component {i} has no arcs")

    cids = set()
    ins: dict[str, int] = {}
    outs: dict[str, int] = {}
    for c in d.crossings:
        if c.id in cids:
            problems.append(f"duplicate crossing id {c.id}")
        cids.add(c.id)
        bad = [x for x in (c.over, c.under_in, c.under_out) if x not in comp]
        for x in bad:
            problems.append(f"crossing {c.id} references unknown arc {x}")
        if c.writhe not in (1, -1):
            problems.append(f"crossing {c.id} has writhe {c.writhe}, expected +1 or -1")
        if bad:
            continue
        if comp[c.under_in] != comp[c.under_out]:
            problems.append(f"under arcs of crossing {c.id} on different components")
        ins[c.under_in] = ins.get(c.under_in, 0) + 1
        outs[c.under_out] = outs.get(c.under_out, 0) + 1
    # incidence counts are only meaningful once every crossing is well formed
    if problems:
        return problems

    for a in ids:
        i, o = ins.get(a, 0), outs.get(a, 0)
        if i > 1:
            problems.append(f"arc {a} enters {i} underpasses")
        if o > 1:
            problems.append(f"arc {a} leaves {o} underpasses")
        if i != o:
            problems.append(f"arc {a} has unbalanced underpass ends ({i} in, {o} out)")
    if problems:
        return problems

    # every component must be one cycle of the successor relation
    succ = {c.under_in: c.under_out for c in d.crossings}
    by_comp: dict[int, list[str]] = {}
    for a in d.arcs:
        by_comp.setdefault(a.component, []).append(a.id)
    for i, arcs in sorted(by_comp.items()):
        closed = [a for a in arcs if a not in succ]
        if closed:
            if len(arcs) > 1:
                problems.append(
                    f"component {i} mixes a crossing-free arc {closed[0]} with other arcs"
                )
            continue
        start = arcs[0]
        cycle = [start]
        cur = succ[start]
        while cur != start and len(cycle) <= len(arcs):
            cycle.append(cur)
            cur = succ[cur]
        if len(cycle) != len(arcs):
            problems.append(f"component {i} is not traced by a single cycle of arcs")
    return problems


def require_valid(d: LinkDiagram) -> LinkDiagram:
    problems = validate(d)
    if problems:
        raise DiagramError("invalid diagram: " + "; ".join(problems))
    return d


@dataclass(frozen=True)
class Trace:
    cycles: dict[int, tuple[str, ...]]
    # arc id -> (crossing it starts at, crossing it ends at); None for closed arcs
    ends: dict[str, tuple[str | None, str | None]] = field(default_factory=dict)


def trace_components(d: LinkDiagram) -> Trace:
    """Cyclic arc order per component, starting from the component's first listed arc."""
    succ = {c.under_in: c.under_out for c in d.crossings}
    start_at = {c.under_out: c.id for c in d.crossings}
    end_at = {c.under_in: c.id for c in d.crossings}
    firsts: dict[int, str] = {}
    sizes: dict[int, int] = {}
    for a in d.arcs:
        firsts.setdefault(a.component, a.id)
        sizes[a.component] = sizes.get(a.component, 0) + 1
    cycles = {}
    for i in range(1, d.mu + 1):
        if i not in firsts:
            raise RuntimeError(f"component {i} has no arcs")
        start = firsts[i]
        cycle = [start]
        cur = succ.get(start, start)
        while cur != start:
            cycle.append(cur)
            if len(cycle) > sizes[i]:
                raise RuntimeError(f"component {i} does not close up")
            cur = succ[cur]
        if len(cycle) != sizes[i]:
            raise RuntimeError(f"component {i} is not a single cycle")
        cycles[i] = tuple(cycle)
    ends = {a.id: (start_at.get(a.id), end_at.get(a.id)) for a in d.arcs}
    return Trace(cycles, ends)


def is_alternating(d: LinkDiagram) -> bool:
    """Each arc is entered at one underpass and left at another, with writhes +1 and -1."""
    end_w = {c.under_in: c.writhe for c in d.crossings}
    start_w = {c.under_out: c.writhe for c in d.crossings}
    for a in d.arcs:
        if a.id not in end_w or a.id not in start_w:
            return False
        if end_w[a.id] == start_w[a.id]:
            return False
    return True


def split_union(d1: LinkDiagram, d2: LinkDiagram, prefixes=("L", "R")) -> LinkDiagram:
    """Disjoint union; ids are prefixed only when they would collide."""
    ids1 = {a.id for a in d1.arcs} | {c.id for c in d1.crossings}
    ids2 = {a.id for a in d2.arcs} | {c.id for c in d2.crossings}
    p1, p2 = ("", "") if not ids1 & ids2 else (prefixes[0] + ".", prefixes[1] + ".")

    def rename(d: LinkDiagram, p: str, shift: int):
        arcs = [Arc(p + a.id, a.component + shift) for a in d.arcs]
        crossings = [
            Crossing(p + c.id, p + c.over, p + c.under_in, p + c.under_out, c.writhe)
            for c in d.crossings
        ]
        return arcs, crossings

    a1, c1 = rename(d1, p1, 0)
    a2, c2 = rename(d2, p2, d1.mu)
    return LinkDiagram(d1.mu + d2.mu, tuple(a1 + a2), tuple(c1 + c2))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_PD_TOKEN = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_diagram(text: str, check: bool = True) -> LinkDiagram:
    """Accept a JSON diagram document or a PD-code line.

    With ``check`` the result must pass ``validate``.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise DiagramError(
                f"JSON syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
        d = LinkDiagram.from_dict(data)
    else:
        d = parse_pd(stripped)
    return require_valid(d) if check else d


def _scan_pd(text: str) -> list[tuple[int, int, int, int]]:
    quads = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace() or text[pos] == ",":
            pos += 1
            continue
        m = _PD_TOKEN.match(text, pos)
        if not m:
            raise DiagramError(f"PD syntax error at position {pos}: {text[pos:pos + 12]!r}")
        quads.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if not quads:
        raise DiagramError("PD code has no crossings")
    return quads


def parse_pd(text: str) -> LinkDiagram:
    """Build a diagram from counterclockwise PD quadruples.

    Each X[i,j,k,l] starts at the incoming under strand i, so k is the
    outgoing under strand.  The over strand runs j->l or l->j; its direction
    comes from tracing the components.  Crossing writhe is -1 for j->l and
    +1 for l->j.
    """
    quads = _scan_pd(text)
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, q in enumerate(quads):
        for pos, label in enumerate(q):
            occ.setdefault(label, []).append((ci, pos))
    for label, places in occ.items():
        if len(places) != 2:
            raise DiagramError(f"strand label {label} occurs {len(places)} times, expected 2")

    def other(label: int, here: tuple[int, int]) -> tuple[int, int]:
        a, b = occ[label]
        if a == here:
            return b
        if b == here:
            return a
        raise DiagramError(f"strand {label} inconsistent")

    # walk: each step enters a crossing at an occurrence and leaves through the opposite slot
    visited: set[tuple[int, int]] = set()
    components: list[list[tuple[int, int, int]]] = []  # (crossing, entry pos, entry label)

    def walk(ci: int, pos: int) -> list[tuple[int, int, int]]:
        steps = []
        while (ci, pos) not in visited:
            visited.add((ci, pos))
            exit_pos = (pos + 2) % 4
            visited.add((ci, exit_pos))
            steps.append((ci, pos, quads[ci][pos]))
            label = quads[ci][exit_pos]
            ci, pos = other(label, (ci, exit_pos))
        return steps

    # components with an under passage start at an incoming under slot
    for ci in range(len(quads)):
        if (ci, 0) not in visited:
            components.append(walk(ci, 0))
    # remaining components pass over everything; orient by ascending labels
    while True:
        left = sorted(
            (quads[ci][pos], ci, pos)
            for ci in range(len(quads))
            for pos in (1, 3)
            if (ci, pos) not in visited
        )
        if not left:
            break
        label = left[0][0]
        # of the two slots carrying the smallest label, enter at the one whose
        # exit label is smaller, so the labels ascend along the orientation
        entries = [(quads[ci][(pos + 2) % 4], ci, pos) for lab, ci, pos in left if lab == label]
        _, ci, pos = min(entries)
        components.append(walk(ci, pos))

    over_dir: dict[int, int] = {}  # crossing -> entry position of the over strand
    for steps in components:
        for ci, pos, _ in steps:
            if pos == 2:
                raise DiagramError(
                    f"crossing {ci + 1} is traversed against its under strand"
                )
            if pos in (1, 3):
                over_dir[ci] = pos

    # arcs break at under passages: each arc begins at the outgoing under slot
    arcs: list[Arc] = []
    under_in: dict[int, str] = {}
    under_out: dict[int, str] = {}
    over_arc: dict[int, str] = {}
    for comp_index, steps in enumerate(components, start=1):
        under_positions = [k for k, (_, pos, _) in enumerate(steps) if pos == 0]
        if not under_positions:
            name = f"s{steps[0][2]}"
            arcs.append(Arc(name, comp_index))
            for ci, _, _ in steps:
                over_arc[ci] = name
            continue
        n = len(steps)
        for j, k in enumerate(under_positions):
            nxt = under_positions[(j + 1) % len(under_positions)]
            ci0 = steps[k][0]
            # the arc leaves ci0 along the strand labelled at its exit slot
            name = f"s{quads[ci0][2]}"
            arcs.append(Arc(name, comp_index))
            under_out[ci0] = name
            m = (k + 1) % n
            while m != nxt:
                over_arc[steps[m][0]] = name
                m = (m + 1) % n
            under_in[steps[nxt][0]] = name
    crossings = []
    for ci in range(len(quads)):
        writhe = -1 if over_dir[ci] == 1 else 1
        crossings.append(
            Crossing(f"x{ci + 1}", over_arc[ci], under_in[ci], under_out[ci], writhe)
        )
    return LinkDiagram(len(components), tuple(arcs), tuple(crossings))


# ---------------------------------------------------------------------------
# Rewriting
# ---------------------------------------------------------------------------


def _fresh(existing: Iterable[str], stem: str) -> str:
    taken = set(existing)
    k = 1
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def _all_ids(d: LinkDiagram) -> set[str]:
    return {a.id for a in d.arcs} | {c.id for c in d.crossings}


def _rename_arc(crossings: Iterable[Crossing], old: str, new: str) -> list[Crossing]:
    def sub(x):
        return new if x == old else x

    return [
        Crossing(c.id, sub(c.over), sub(c.under_in), sub(c.under_out), c.writhe)
        for c in crossings
    ]


@dataclass(frozen=True)
class MoveSpec:
    """A Reidemeister rewrite request.

    kind: "R1+", "R1-", "R1inv", "R2", "R2inv" or "R3".
      R1+/R1-: arc, over_first
      R1inv: crossing
      R2: over, arc, writhe, placement ("end" or "start")
      R2inv: crossings (pair)
      R3: crossings (triple X, Y, Z)
    """

    kind: str
    arc: str | None = None
    over: str | None = None
    crossing: str | None = None
    crossings: tuple[str, ...] = ()
    writhe: int = 1
    placement: str = "end"
    over_first: bool = True


def insert_trivial_crossing(
    d: LinkDiagram, arc: str, w: int, over_first: bool = True
) -> LinkDiagram:
    """Put a kink of writhe w into an arc, just before the arc's terminating underpass."""
    if w not in (1, -1):
        raise DiagramError(f"writhe must be +1 or -1, got {w}")
    a = d.arc(arc)
    ids = _all_ids(d)
    kid = _fresh(ids, "k")
    end = d.ending_at().get(arc)
    if end is None:
        kink = Crossing(kid, arc, arc, arc, w)
        return LinkDiagram(d.mu, d.arcs, d.crossings + (kink,))
    new = _fresh(ids | {kid}, "n")
    kink = Crossing(kid, arc if over_first else new, arc, new, w)
    crossings = [
        replace(c, under_in=new) if c.id == end.id else c for c in d.crossings
    ]
    return LinkDiagram(
        d.mu, d.arcs + (Arc(new, a.component),), tuple(crossings) + (kink,)
    )


def _merge_arcs(d: LinkDiagram, keep: str, drop: str, removed: set[str]) -> LinkDiagram:
    crossings = [c for c in d.crossings if c.id not in removed]
    arcs = d.arcs
    if drop != keep:
        crossings = _rename_arc(crossings, drop, keep)
        arcs = tuple(a for a in d.arcs if a.id != drop)
    return LinkDiagram(d.mu, arcs, tuple(crossings))


def remove_kink(d: LinkDiagram, crossing: str) -> LinkDiagram:
    k = d.crossing(crossing)
    if k.over not in (k.under_in, k.under_out):
        raise DiagramError(f"crossing {crossing} is not a kink")
    return _merge_arcs(d, k.under_in, k.under_out, {k.id})


def insert_bigon(
    d: LinkDiagram, over: str, arc: str, w: int = 1, placement: str = "end"
) -> LinkDiagram:
    """Slide a piece of ``over`` across ``arc``, creating two crossings of opposite writhe."""
    if w not in (1, -1):
        raise DiagramError(f"writhe must be +1 or -1, got {w}")
    if placement not in ("end", "start"):
        raise DiagramError(f"placement must be 'end' or 'start', got {placement!r}")
    d.arc(over)
    a = d.arc(arc)
    ids = _all_ids(d)
    x1 = _fresh(ids, "r")
    x2 = _fresh(ids | {x1}, "r")
    n1 = _fresh(ids | {x1, x2}, "n")
    end = d.ending_at().get(arc)
    if end is None:
        # closed component: a -> n1 -> a
        new_cross = (Crossing(x1, over, arc, n1, w), Crossing(x2, over, n1, arc, -w))
        return LinkDiagram(
            d.mu, d.arcs + (Arc(n1, a.component),), d.crossings + new_cross
        )
    n2 = _fresh(ids | {x1, x2, n1}, "n")
    new_arcs = (Arc(n1, a.component), Arc(n2, a.component))
    if placement == "end":
        crossings = [replace(c, under_in=n2) if c.id == end.id else c for c in d.crossings]
        new_cross = (Crossing(x1, over, arc, n1, w), Crossing(x2, over, n1, n2, -w))
    else:
        start = d.starting_at()[arc]
        crossings = [
            replace(c, under_out=n1) if c.id == start.id else c for c in d.crossings
        ]
        new_cross = (Crossing(x1, over, n1, n2, w), Crossing(x2, over, n2, arc, -w))
    return LinkDiagram(d.mu, d.arcs + new_arcs, tuple(crossings) + new_cross)


def bigon_problem(d: LinkDiagram, first: str, second: str) -> str | None:
    """Why (first, second) is not a removable bigon, or None if it is."""
    if first == second:
        return "a bigon needs two distinct crossings"
    x1, x2 = d.crossing(first), d.crossing(second)
    if x1.over != x2.over:
        return f"crossings {first} and {second} have different over arcs"
    m = x1.under_out
    if x2.under_in != m:
        return f"crossing {second} does not follow {first} along the under strand"
    if m == x1.under_in:
        return f"arc {m} is a kink loop"
    if d.over_count().get(m, 0):
        return f"arc {m} passes over other strands"
    if x1.writhe != -x2.writhe:
        return f"crossings {first} and {second} have equal writhe"
    return None


def remove_bigon(d: LinkDiagram, first: str, second: str) -> LinkDiagram:
    problem = bigon_problem(d, first, second)
    if problem:
        raise DiagramError(f"R2inv at ({first}, {second}): {problem}")
    x1, x2 = d.crossing(first), d.crossing(second)
    middle = x1.under_out
    crossings = [c for c in d.crossings if c.id not in (first, second)]
    arcs = [a for a in d.arcs if a.id != middle]
    keep, drop = x1.under_in, x2.under_out
    if drop != keep:
        crossings = _rename_arc(crossings, drop, keep)
        arcs = [a for a in arcs if a.id != drop]
    return LinkDiagram(d.mu, tuple(arcs), tuple(crossings))


def triangle_problem(d: LinkDiagram, x: str, y: str, z: str) -> str | None:
    """Why (x, y, z) is not an R3 site, or None if it is.

    x and y share the top strand T; z's over arc is one of x's under arcs (the
    middle strand); y and z are consecutive along the bottom strand.
    """
    if len({x, y, z}) < 3:
        return "an R3 site needs three distinct crossings"
    X, Y, Z = d.crossing(x), d.crossing(y), d.crossing(z)
    top = X.over
    if Y.over != top:
        return f"crossings {x} and {y} have different over arcs"
    middle = (X.under_in, X.under_out)
    if Z.over not in middle:
        return f"crossing {z} does not pass under the strand through {x}"
    if Y.under_out == Z.under_in:
        shared, z_last_bottom = Y.under_out, True
    elif Z.under_out == Y.under_in:
        shared, z_last_bottom = Z.under_out, False
    else:
        return f"crossings {y} and {z} are not consecutive on one strand"
    if shared in (top,) + middle:
        return f"arc {shared} is part of another strand of the triangle"
    if d.over_count().get(shared, 0):
        return f"arc {shared} passes over other strands"
    z_last_middle = Z.over == X.under_out
    if (X.writhe * Y.writhe == 1) != (z_last_middle == z_last_bottom):
        return "writhes do not match a triangle configuration"
    return None


def slide_triangle(d: LinkDiagram, x: str, y: str, z: str) -> LinkDiagram:
    problem = triangle_problem(d, x, y, z)
    if problem:
        raise DiagramError(f"R3 at ({x}, {y}, {z}): {problem}")
    X, Y, Z = d.crossing(x), d.crossing(y), d.crossing(z)
    toggled = X.under_out if Z.over == X.under_in else X.under_in
    ids = _all_ids(d)
    fresh = _fresh(ids, "b")
    if Y.under_out == Z.under_in:
        b1, shared, b3 = Y.under_in, Y.under_out, Z.under_out
        newZ = Crossing(Z.id, toggled, b1, fresh, Z.writhe)
        newY = Crossing(Y.id, Y.over, fresh, b3, Y.writhe)
    else:
        b1, shared, b3 = Z.under_in, Z.under_out, Y.under_out
        newY = Crossing(Y.id, Y.over, b1, fresh, Y.writhe)
        newZ = Crossing(Z.id, toggled, fresh, b3, Z.writhe)
    comp = d.arc(shared).component
    crossings = []
    for c in d.crossings:
        if c.id == Y.id:
            crossings.append(newY)
        elif c.id == Z.id:
            crossings.append(newZ)
        else:
            crossings.append(c)
    arcs = tuple(a for a in d.arcs if a.id != shared) + (Arc(fresh, comp),)
    return LinkDiagram(d.mu, arcs, tuple(crossings))


def reidemeister_move(d: LinkDiagram, m: MoveSpec) -> LinkDiagram:
    if m.kind in ("R1+", "R1-"):
        if m.arc is None:
            raise DiagramError(f"{m.kind} needs an arc")
        out = insert_trivial_crossing(d, m.arc, 1 if m.kind == "R1+" else -1, m.over_first)
    elif m.kind == "R1inv":
        if m.crossing is None:
            raise DiagramError("R1inv needs a crossing")
        out = remove_kink(d, m.crossing)
    elif m.kind == "R2":
        if m.arc is None or m.over is None:
            raise DiagramError("R2 needs an over arc and an under arc")
        out = insert_bigon(d, m.over, m.arc, m.writhe, m.placement)
    elif m.kind == "R2inv":
        if len(m.crossings) != 2:
            raise DiagramError("R2inv needs two crossings")
        out = remove_bigon(d, *m.crossings)
    elif m.kind == "R3":
        if len(m.crossings) != 3:
            raise DiagramError("R3 needs three crossings")
        out = slide_triangle(d, *m.crossings)
    else:
        raise DiagramError(f"unknown move kind {m.kind!r}")
    return require_valid(out)


# ---------------------------------------------------------------------------
# Site enumeration, used by fuzzing
# ---------------------------------------------------------------------------


def kink_sites(d: LinkDiagram) -> list[str]:
    return [c.id for c in d.crossings if c.over in (c.under_in, c.under_out)]


def bigon_sites(d: LinkDiagram) -> list[tuple[str, str]]:
    ends = d.ending_at()
    sites = []
    for c in d.crossings:
        nxt = ends.get(c.under_out)
        if nxt is not None and bigon_problem(d, c.id, nxt.id) is None:
            sites.append((c.id, nxt.id))
    return sites


def triangle_sites(d: LinkDiagram) -> list[tuple[str, str, str]]:
    by_over: dict[str, list[Crossing]] = {}
    for c in d.crossings:
        by_over.setdefault(c.over, []).append(c)
    ends = d.ending_at()
    starts = d.starting_at()
    sites = []
    for group in by_over.values():
        for X in group:
            for Y in group:
                if X.id == Y.id:
                    continue
                for Z in (ends.get(Y.under_out), starts.get(Y.under_in)):
                    if Z is None:
                        continue
                    if triangle_problem(d, X.id, Y.id, Z.id) is None:
                        sites.append((X.id, Y.id, Z.id))
    return sites


def prepare_triangle(
    d: LinkDiagram, z: str, top: str, w: int = 1
) -> tuple[LinkDiagram, tuple[str, str, str]]:
    """Create an R3 site around crossing z using two bigons of the strand ``top``.

    Returns the rewritten diagram and the (X, Y, Z) crossing triple.
    """
    Z = d.crossing(z)
    before = _all_ids(d)
    d1 = insert_bigon(d, top, Z.over, w, "end")
    x1 = sorted(c.id for c in d1.crossings if c.id not in before and c.under_in == Z.over)
    d2 = insert_bigon(d1, top, d1.crossing(z).under_out, w, "start")
    mid = _all_ids(d1)
    y1 = [
        c.id
        for c in d2.crossings
        if c.id not in mid and c.under_in == d2.crossing(z).under_out
    ]
    if not x1 or not y1:
        raise DiagramError(f"cannot prepare a triangle around crossing {z}")
    site = (x1[0], y1[0], z)
    problem = triangle_problem(d2, *site)
    if problem:
        raise DiagramError(f"triangle preparation around {z} failed: {problem}")
    return d2, site


def make_alternating(d: LinkDiagram) -> LinkDiagram:
    """Insert kinks until every arc underpasses once with each writhe."""
    require_valid(d)
    out = d
    for a in d.arcs:
        if a.id not in out.ending_at():
            out = insert_trivial_crossing(out, a.id, 1)
    changed = True
    while changed:
        changed = False
        end_w = {c.under_in: c.writhe for c in out.crossings}
        start_w = {c.under_out: c.writhe for c in out.crossings}
        for a in out.arcs:
            w = end_w[a.id]
            if w == start_w[a.id]:
                # the kink sits at the arc's end: the arc keeps its start writhe
                # and gains -w at its new end; the new piece gets -w then w
                out = insert_trivial_crossing(out, a.id, -w)
                changed = True
                break
    return require_valid(out)
