"""Finite quandles, affine colorings and the displacement module of a diagram."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .alexander import Presentation, build_presentation, m0_presentation, reduce_tau
from .diagram import DiagramError, LinkDiagram, require_valid
from .laurent import IntLaurent, RatLaurent, lp_evaluate, rat_divmod
from .modulealg import (
    RatSmithResult,
    eliminate_units,
    smith_integer,
    smith_rational_univariate,
)


@dataclass(frozen=True)
class AffineQuandleSpec:
    n: int
    u: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"modulus must be positive, got {self.n}")
        if math.gcd(self.u, self.n) != 1:
            raise ValueError(f"{self.u} is not a unit mod {self.n}")


@dataclass(frozen=True)
class CayleyQuandle:
    """table[x][y] = x |> y; column y is the right translation by y."""

    table: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.table)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> CayleyQuandle:
        return cls(tuple(tuple(int(v) for v in r) for r in rows))

    def to_json(self) -> str:
        return json.dumps([list(r) for r in self.table])

    @classmethod
    def from_json(cls, text: str) -> CayleyQuandle:
        return cls.from_rows(json.loads(text))

    def translation(self, y: int) -> tuple[int, ...]:
        return tuple(self.table[x][y] for x in range(self.size))


def affine_quandle(spec: AffineQuandleSpec) -> CayleyQuandle:
    n, u = spec.n, spec.u
    return CayleyQuandle(
        tuple(tuple((u * x + (1 - u) * y) % n for y in range(n)) for x in range(n))
    )


def conjugation_quandle_s3() -> CayleyQuandle:
    """x |> y = y^-1 x y on the symmetric group of three letters."""
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # apply q then p
        return tuple(p[q[i]] for i in range(3))

    def inverse(p):
        inv = [0] * 3
        for i, v in enumerate(p):
            inv[v] = i
        return tuple(inv)

    rows = []
    for x in perms:
        rows.append([index[compose(inverse(y), compose(x, y))] for y in perms])
    return CayleyQuandle.from_rows(rows)


def check_quandle_axioms(q: CayleyQuandle) -> list[str]:
    n = q.size
    t = q.table
    problems = []
    for x in range(n):
        if len(t[x]) != n or any(not 0 <= v < n for v in t[x]):
            return [f"row {x} is not a row of values in 0..{n - 1}"]
    for x in range(n):
        if t[x][x] != x:
            problems.append(f"idempotence fails at {x}")
    for y in range(n):
        column = {t[x][y] for x in range(n)}
        if len(column) != n:
            problems.append(f"translation by {y} is not a permutation")
    for x, y, z in itertools.product(range(n), repeat=3):
        if t[t[x][y]][z] != t[t[x][z]][t[y][z]]:
            problems.append(f"right distributivity fails at ({x}, {y}, {z})")
            break
    return problems


def check_medial(q: CayleyQuandle) -> bool:
    t = q.table
    n = q.size
    for w, x, y, z in itertools.product(range(n), repeat=4):
        if t[t[w][x]][t[y][z]] != t[t[w][y]][t[x][z]]:
            return False
    return True


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def displacement_group(q: CayleyQuandle) -> set[tuple[int, ...]]:
    """Closure of the elementary displacements beta_y beta_z^-1."""
    n = q.size
    betas = [q.translation(y) for y in range(n)]
    gens = set()
    for y in range(n):
        for z in range(n):
            gens.add(_compose(_invert(betas[z]), betas[y]))
    identity = tuple(range(n))
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _compose(g, s)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def dis_group_order(q: CayleyQuandle) -> int:
    return len(displacement_group(q))


def check_semiregular(q: CayleyQuandle) -> bool:
    identity = tuple(range(q.size))
    for g in displacement_group(q):
        if g != identity and any(g[i] == i for i in range(q.size)):
            return False
    return True


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------


def coloring_matrix(matrix: Sequence[Sequence[IntLaurent]], spec: AffineQuandleSpec) -> list[list[int]]:
    """Reduced relation matrix evaluated at t = u, as residues mod n."""
    if spec.n == 1:
        return [[0 for _ in row] for row in matrix]
    return [[lp_evaluate(x, (spec.u,), spec.n) if x else 0 for x in row] for row in matrix]


def count_from_matrix(matrix: Sequence[Sequence[int]], gens: int, n: int) -> int:
    """Number of x in Z_n^gens with x^T A = 0 mod n."""
    if gens == 0:
        return 1
    diag = smith_integer(matrix, track=False).diag if matrix and matrix[0] else []
    count = n ** (gens - len(diag))
    for d in diag:
        count *= math.gcd(d, n)
    return count


def count_colorings(d: LinkDiagram, spec: AffineQuandleSpec, reduced: Presentation | None = None) -> int:
    """Colorings by the affine quandle: a3 = u*a2 + (1-u)*a1 mod n at each crossing."""
    require_valid(d)
    if reduced is None:
        reduced = reduce_tau(build_presentation(d))
    matrix, kept, _ = eliminate_units(reduced.matrix)
    return count_from_matrix(coloring_matrix(matrix, spec), len(kept), spec.n)


def brute_force_colorings(d: LinkDiagram, spec: AffineQuandleSpec) -> int:
    """Count colorings by enumeration, checking each crossing once its three arcs are colored."""
    arcs = [a.id for a in d.arcs]
    index = {a: i for i, a in enumerate(arcs)}
    n, u = spec.n, spec.u
    due: list[list[tuple[int, int, int]]] = [[] for _ in arcs]
    for c in d.crossings:
        a1, a2, a3 = (index[x] for x in c.roles())
        due[max(a1, a2, a3)].append((a1, a2, a3))
    colors = [0] * len(arcs)

    def extend(i: int) -> int:
        if i == len(arcs):
            return 1
        total = 0
        for v in range(n):
            colors[i] = v
            if all(colors[a3] == (u * colors[a2] + (1 - u) * colors[a1]) % n for a1, a2, a3 in due[i]):
                total += extend(i + 1)
        return total

    return extend(0)


def orbit_count(d: LinkDiagram) -> int:
    """Number of classes after identifying the two under arcs at every crossing."""
    require_valid(d)
    parent = {a.id: a.id for a in d.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        a, b = find(c.under_in), find(c.under_out)
        if a != b:
            parent[a] = b
    classes = len({find(a.id) for a in d.arcs})
    if classes != d.mu:
        raise AssertionError(f"diagram declares {d.mu} components but has {classes} orbits")
    return d.mu


# ---------------------------------------------------------------------------
# Displacement module
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DisplacementPresentation:
    generators: tuple[str, ...]
    base: str
    relations: tuple[str, ...]
    matrix: tuple[tuple[IntLaurent, ...], ...]


def displacement_presentation(d: LinkDiagram, base: str) -> DisplacementPresentation:
    """Generators d_a, one column per crossing, plus a column killing d_base."""
    require_valid(d)
    if base not in d.arc_ids():
        raise DiagramError(f"unknown base arc {base!r}")
    gens = tuple(d.arc_ids())
    idx = {a: i for i, a in enumerate(gens)}
    one = IntLaurent.one(1)
    t = IntLaurent.var(1, 1)
    zero = IntLaurent.zero(1)
    cols = []
    for c in d.crossings:
        col = [zero] * len(gens)
        a1, a2, a3 = c.roles()
        col[idx[a1]] = col[idx[a1]] + (one - t)
        col[idx[a2]] = col[idx[a2]] + t
        col[idx[a3]] = col[idx[a3]] - one
        cols.append(col)
    base_col = [zero] * len(gens)
    base_col[idx[base]] = one
    cols.append(base_col)
    matrix = tuple(tuple(col[i] for col in cols) for i in range(len(gens)))
    labels = tuple(c.id for c in d.crossings) + (f"zero({base})",)
    return DisplacementPresentation(tuple(f"d({a})" for a in gens), base, labels, matrix)


def divide_out_augmentation(res: RatSmithResult) -> RatSmithResult:
    """Image of multiplication by (1 - t): Q[t]/(f) becomes Q[t]/(f/(t-1)) when t-1 divides f."""
    t_minus_1 = RatLaurent({1: 1, 0: -1})
    out = []
    for f in res.factors:
        q, r = rat_divmod(f, t_minus_1)
        g = q if not r else f
        g = g.monic_normal()
        if not g.is_unit():
            out.append(g)
    return RatSmithResult(tuple(out), res.rank)


def displacement_rational_factors(reduced: Presentation, base: str) -> RatSmithResult:
    """Rational invariant factors of (1 - t) times the difference submodule."""
    m0 = m0_presentation(reduced, base)
    matrix, kept, _ = eliminate_units(m0.matrix)
    return divide_out_augmentation(smith_rational_univariate(matrix, len(kept)))
