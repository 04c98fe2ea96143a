"""Normal forms and derived invariants of module presentations.

Matrices are lists of rows; rows are generators and columns are relations,
so the presented module is (ring)^rows modulo the column span.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .alexander import CrowellCoord, Presentation
from .laurent import (
    IntLaurent,
    RatLaurent,
    lp_evaluate,
    lp_gcd_univariate,
    lp_normalize_unit,
    rat_divmod,
)


class CapExceeded(RuntimeError):
    """A configured size cap was exceeded; the result would not be exact."""


# ---------------------------------------------------------------------------
# Integer Smith normal form
# ---------------------------------------------------------------------------


@dataclass
class SmithResult:
    D: list[list[int]]
    U: list[list[int]] | None
    V: list[list[int]] | None
    U_inv: list[list[int]] | None
    diag: list[int]

    @property
    def rank_deficit(self) -> int:
        return sum(1 for d in self.diag if d == 0)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_integer(A: Sequence[Sequence[int]], track: bool = True) -> SmithResult:
    """Smith form U*A*V = D with the smallest-absolute-value pivot rule.

    Ties are broken row-major.  With ``track`` the transforms U, V and the
    inverse of U are maintained alongside the elimination.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    a = [list(map(int, row)) for row in A]
    if not track:
        diag = _diagonal(a, m, n)
        D = [[diag[i] if i == j and i < len(diag) else 0 for j in range(n)] for i in range(m)]
        return SmithResult(D, None, None, None, diag)
    U = _identity(m) if track else None
    Ui = _identity(m) if track else None
    V = _identity(n) if track else None

    def swap_rows(i, k):
        if i == k:
            return
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        if j == k:
            return
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if not q:
            return
        rs, rd = a[src], a[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if track:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        if not q:
            return
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if track:
            U[i] = [-x for x in U[i]]
            for row in Ui:
                row[i] = -row[i]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            diag.extend([0] * (min(m, n) - t))
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                best = None
                for i in range(t + 1, m):
                    v = abs(a[i][t])
                    if v and (best is None or v < best[0]):
                        best = (v, i, "r")
                for j in range(t + 1, n):
                    v = abs(a[t][j])
                    if v and (best is None or v < best[0]):
                        best = (v, j, "c")
                if best[0] < abs(a[t][t]):
                    if best[2] == "r":
                        swap_rows(t, best[1])
                    else:
                        swap_cols(t, best[1])
                continue
            # pivot must divide every remaining entry
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            negate_row(t)
        diag.append(a[t][t])
    return SmithResult(a, U, V, Ui, diag)


def _diagonal(a: list[list[int]], m: int, n: int) -> list[int]:
    """Invariant factors only; same pivot rule as the tracked version, no bookkeeping."""
    diag = []
    for t in range(min(m, n)):
        while True:
            best = 0
            bi = bj = t
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    v = row[j]
                    if v:
                        v = abs(v)
                        if not best or v < best:
                            best, bi, bj = v, i, j
            if not best:
                diag.extend([0] * (min(m, n) - t))
                return diag
            a[t], a[bi] = a[bi], a[t]
            if bj != t:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
            pivot_row = a[t]
            p = pivot_row[t]
            clean = True
            for i in range(t + 1, m):
                row = a[i]
                if row[t]:
                    q = row[t] // p
                    for j in range(t, n):
                        if pivot_row[j]:
                            row[j] -= q * pivot_row[j]
                    if row[t]:
                        clean = False
            for j in range(t + 1, n):
                if pivot_row[j]:
                    q = pivot_row[j] // p
                    for row in a:
                        if row[t]:
                            row[j] -= q * row[t]
                    if pivot_row[j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return diag


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def int_det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    a = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def abelian_invariants(A: Sequence[Sequence[int]], gens: int) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients > 1) of Z^gens modulo the column span of A.

    An empty ``A`` means there are no relations at all.
    """
    if not A:
        return gens, []
    if len(A) != gens:
        raise ValueError(f"matrix has {len(A)} rows, expected {gens}")
    res = smith_integer(A, track=False)
    nonzero = [d for d in res.diag if d]
    return gens - len(nonzero), [d for d in nonzero if d > 1]


# ---------------------------------------------------------------------------
# Unit elimination over a Laurent ring
# ---------------------------------------------------------------------------


def eliminate_units(
    matrix: Sequence[Sequence[IntLaurent]],
) -> tuple[list[list[IntLaurent]], list[int], list[int]]:
    """Pivot on unit entries until none remain.

    Each step solves one relation for one generator and substitutes it
    away, so the presented module (and each of its Fitting ideals) is
    unchanged.  Returns (matrix, surviving row indices, surviving column
    indices); zero columns are dropped as well.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    entries: dict[tuple[int, int], IntLaurent] = {}
    row_idx: dict[int, set[int]] = {i: set() for i in range(m)}
    col_idx: dict[int, set[int]] = {j: set() for j in range(n)}
    for i, row in enumerate(matrix):
        for j, x in enumerate(row):
            if x:
                entries[(i, j)] = x
                row_idx[i].add(j)
                col_idx[j].add(i)
    while True:
        best = None
        for (i, j), x in entries.items():
            if x.is_unit():
                cost = ((len(row_idx[i]) - 1) * (len(col_idx[j]) - 1), i, j)
                if best is None or cost < best:
                    best = cost
        if best is None:
            break
        _, r0, c0 = best
        inv = entries[(r0, c0)].unit_inverse()
        pivot_col = {r: entries[(r, c0)] for r in col_idx[c0] if r != r0}
        for c in list(row_idx[r0]):
            if c == c0:
                continue
            factor = entries[(r0, c)] * inv
            for r, x in pivot_col.items():
                old = entries.get((r, c))
                val = -(factor * x) if old is None else old - factor * x
                if val:
                    entries[(r, c)] = val
                    row_idx[r].add(c)
                    col_idx[c].add(r)
                elif (r, c) in entries:
                    del entries[(r, c)]
                    row_idx[r].discard(c)
                    col_idx[c].discard(r)
        for c in row_idx[r0]:
            del entries[(r0, c)]
            col_idx[c].discard(r0)
        for r in col_idx[c0]:
            entries.pop((r, c0), None)
            row_idx[r].discard(c0)
        del row_idx[r0]
        del col_idx[c0]
    rows = sorted(row_idx)
    cols = sorted(c for c in col_idx if col_idx[c])
    zero = IntLaurent.zero(matrix[0][0].nvars) if m and n else None
    out = [[entries.get((r, c), zero) for c in cols] for r in rows]
    return out, rows, cols


# ---------------------------------------------------------------------------
# Minors, elementary ideals, Alexander polynomials
# ---------------------------------------------------------------------------


def _check_caps(rows: int, size: int, max_rows: int, max_size: int) -> None:
    if rows > max_rows:
        raise CapExceeded(f"minor enumeration over {rows} rows exceeds the cap of {max_rows}")
    if size > max_size:
        raise CapExceeded(f"minor size {size} exceeds the cap of {max_size}")


def all_minors(matrix: Sequence[Sequence[IntLaurent]], size: int, nvars: int) -> list[IntLaurent]:
    """All size x size minors, rows then columns in lexicographic order."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    zero = IntLaurent.zero(nvars)
    if size == 0:
        return [IntLaurent.one(nvars)]
    out = []
    col_sets = list(itertools.combinations(range(n), size))
    for rows in itertools.combinations(range(m), size):
        memo: dict[tuple[int, tuple[int, ...]], IntLaurent] = {}

        def det(pos: int, cols: tuple[int, ...]) -> IntLaurent:
            if pos == size:
                return IntLaurent.one(nvars)
            key = (pos, cols)
            if key in memo:
                return memo[key]
            row = matrix[rows[pos]]
            total = zero
            for k, c in enumerate(cols):
                x = row[c]
                if not x:
                    continue
                sub = det(pos + 1, cols[:k] + cols[k + 1 :])
                if not sub:
                    continue
                term = x * sub
                total = total - term if k % 2 else total + term
            memo[key] = total
            return total

        for cols in col_sets:
            out.append(det(0, cols))
    return out


def elementary_ideal_generators(
    p: Presentation,
    k: int,
    simplify: bool = False,
    max_rows: int = 14,
    max_size: int = 10,
) -> list[IntLaurent]:
    """Generators of E_k: all (g-k)-minors of the relation matrix.

    E_k is the whole ring when g-k <= 0 and zero when g-k exceeds the number
    of relations.  With ``simplify`` unit pivots are removed first, which
    changes the generating set but not the ideal.
    """
    g = len(p.generators)
    if not 0 <= k <= g:
        raise ValueError(f"ideal index {k} outside 0..{g}")
    matrix: Sequence[Sequence[IntLaurent]] = p.matrix
    rows = g
    if simplify:
        matrix, kept, _ = eliminate_units(p.matrix)
        rows = len(kept)
    size = rows - k
    ncols = len(matrix[0]) if matrix else 0
    if size <= 0:
        return [IntLaurent.one(p.nvars)]
    if size > min(rows, ncols):
        return [IntLaurent.zero(p.nvars)]
    _check_caps(rows, size, max_rows, max_size)
    return all_minors(matrix, size, p.nvars)


def alexander_poly(
    p: Presentation, k: int, max_rows: int = 14, max_size: int = 10
) -> IntLaurent:
    """Normalized gcd of the E_k generators of a reduced presentation."""
    if p.nvars != 1:
        raise ValueError("alexander_poly expects a reduced presentation")
    gens = elementary_ideal_generators(p, k, simplify=True, max_rows=max_rows, max_size=max_size)
    g = IntLaurent.zero(1)
    for x in gens:
        g = lp_gcd_univariate(g, x)
        if g == 1:
            break
    return lp_normalize_unit(g)


def alexander_polys(p: Presentation, max_rows: int = 14, max_size: int = 10) -> list[IntLaurent]:
    """Delta_0, Delta_1, ... up to and including the first that equals 1."""
    if p.nvars != 1:
        raise ValueError("alexander_polys expects a reduced presentation")
    matrix, kept, _ = eliminate_units(p.matrix)
    rows = len(kept)
    ncols = len(matrix[0]) if matrix else 0
    out = []
    for k in range(len(p.generators) + 1):
        size = rows - k
        if size <= 0:
            out.append(IntLaurent.one(1))
            break
        if size > min(rows, ncols):
            out.append(IntLaurent.zero(1))
            continue
        _check_caps(rows, size, max_rows, max_size)
        g = IntLaurent.zero(1)
        for x in all_minors(matrix, size, 1):
            g = lp_gcd_univariate(g, x)
            if g == 1:
                break
        out.append(lp_normalize_unit(g))
        if g == 1:
            break
    return out


# ---------------------------------------------------------------------------
# Rational Smith form over Q[t, 1/t]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatSmithResult:
    factors: tuple[RatLaurent, ...]
    rank: int

    def factor_strings(self) -> list[str]:
        return [str(f) for f in self.factors]

    def to_json(self) -> dict:
        return {"factors": self.factor_strings(), "rank": self.rank}


def _monic(f: RatLaurent) -> RatLaurent:
    return f.monic_normal()


def smith_rational_univariate(
    A: Sequence[Sequence[RatLaurent | IntLaurent]], gens: int
) -> RatSmithResult:
    """Invariant factors over the principal ideal domain Q[t, 1/t]."""
    if len(A) != gens:
        raise ValueError(f"matrix has {len(A)} rows, expected {gens}")
    a = [[x.to_rat() if isinstance(x, IntLaurent) else x for x in row] for row in A]
    m = gens
    n = len(a[0]) if m else 0
    diag: list[RatLaurent] = []

    def norm(x: RatLaurent) -> int:
        return x.span()

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j]:
                    s = norm(a[i][j])
                    if best is None or s < best[0]:
                        best = (s, i, j)
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q, _ = rat_divmod(a[i][t], p)
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    dirty = dirty or bool(a[i][t])
            for j in range(t + 1, n):
                if a[t][j]:
                    q, _ = rat_divmod(a[t][j], p)
                    if q:
                        for row in a:
                            row[j] = row[j] - q * row[t]
                    dirty = dirty or bool(a[t][j])
            if dirty:
                best = None
                for i in range(t + 1, m):
                    if a[i][t] and (best is None or norm(a[i][t]) < best[0]):
                        best = (norm(a[i][t]), i, "r")
                for j in range(t + 1, n):
                    if a[t][j] and (best is None or norm(a[t][j]) < best[0]):
                        best = (norm(a[t][j]), j, "c")
                if best[2] == "r":
                    a[t], a[best[1]] = a[best[1]], a[t]
                else:
                    for row in a:
                        row[t], row[best[1]] = row[best[1]], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] and rat_divmod(a[i][j], p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(a[t][t])
    nonzero = [d for d in diag if d]
    factors = tuple(_monic(d) for d in nonzero if not d.is_unit())
    return RatSmithResult(factors, gens - len(nonzero))


def rational_factors(p: Presentation) -> RatSmithResult:
    """Rational invariant factors of a reduced presentation, after unit elimination."""
    matrix, kept, _ = eliminate_units(p.matrix)
    return smith_rational_univariate(matrix, len(kept))


# ---------------------------------------------------------------------------
# Evaluation fingerprints of ideals
# ---------------------------------------------------------------------------


def evaluation_points(
    mu: int, values: Sequence[int] = (1, 3, 5, -3), cap: int = 256
) -> list[tuple[int, ...]]:
    return list(itertools.islice(itertools.product(values, repeat=mu), cap))


def _strip_15(v: int) -> int:
    v = abs(v)
    if v == 0:
        return 0
    for p in (3, 5):
        while v % p == 0:
            v //= p
    return v


@dataclass(frozen=True)
class IdealFingerprint:
    """gcd of the generator values at each point, computed in Z[1/15].

    Inverting 3 and 5 makes every evaluated monomial a unit, so the value is
    an invariant of the ideal rather than of its generating set.
    """

    k: int
    points: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]

    def to_json(self) -> dict:
        return {"k": self.k, "points": [list(p) for p in self.points], "values": list(self.values)}


def ideal_evaluation_fingerprint(
    gens: Sequence[IntLaurent],
    mu: int,
    k: int = 0,
    points: Sequence[tuple[int, ...]] | None = None,
) -> IdealFingerprint:
    pts = tuple(points) if points is not None else tuple(evaluation_points(mu))
    values = []
    for pt in pts:
        g = 0
        for x in gens:
            if x.nvars != mu:
                raise ValueError(f"generator has {x.nvars} variables, expected {mu}")
            val = Fraction(lp_evaluate(x, pt))
            g = math.gcd(g, _strip_15(val.numerator))
        values.append(g)
    return IdealFingerprint(k, pts, tuple(values))


def _polynomial_rows(matrix: Sequence[Sequence[IntLaurent]]) -> list[list[list[tuple]]]:
    """Shift each row by a monomial so every exponent is nonnegative.

    Row scaling by a unit leaves every Fitting ideal alone, and afterwards
    evaluation stays in the integers.  Each entry becomes a list of
    (coefficient, ((variable, exponent), ...)) terms with zero exponents dropped.
    """
    out = []
    for row in matrix:
        present = [x for x in row if x]
        if not present:
            out.append([[] for _ in row])
            continue
        nv = present[0].nvars
        low = [min(x.min_exponents()[i] for x in present) for i in range(nv)]
        out.append(
            [
                [
                    (c, tuple((i, e - m) for i, (e, m) in enumerate(zip(exps, low)) if e != m))
                    for exps, c in x.terms
                ]
                for x in row
            ]
        )
    return out


def _power_tables(rows, point: Sequence[int]) -> list[list[int]]:
    top = [0] * len(point)
    for row in rows:
        for terms in row:
            for _, factors in terms:
                for i, e in factors:
                    if e > top[i]:
                        top[i] = e
    tables = []
    for v, e in zip(point, top):
        table = [1]
        for _ in range(e):
            table.append(table[-1] * v)
        tables.append(table)
    return tables


def _evaluate_rows(rows, point: Sequence[int]) -> list[list[int]]:
    powers = _power_tables(rows, point)
    result = []
    for row in rows:
        vals = []
        for terms in row:
            total = 0
            for c, factors in terms:
                for i, e in factors:
                    c *= powers[i][e]
                total += c
            vals.append(total)
        result.append(vals)
    return result


def fitting_values_at(
    matrix: Sequence[Sequence[IntLaurent]], point: Sequence[int], ks: Sequence[int]
) -> dict[int, int]:
    """E_k fingerprint values at one point via determinantal divisors of the evaluated matrix."""
    return _fitting_from_rows(_polynomial_rows(matrix), len(matrix), point, ks)


def _fitting_from_rows(rows, g: int, point: Sequence[int], ks: Sequence[int]) -> dict[int, int]:
    ncols = len(rows[0]) if g else 0
    sizes = [g - k for k in ks]
    needed = any(0 < s <= min(g, ncols) for s in sizes)
    diag = smith_integer(_evaluate_rows(rows, point), track=False).diag if needed else []
    out = {}
    for k, s in zip(ks, sizes):
        if s <= 0:
            out[k] = 1
        elif s > min(g, ncols):
            out[k] = 0
        else:
            prod = 1
            for d in diag[:s]:
                prod *= d
            out[k] = _strip_15(prod)
    return out


def fitting_fingerprints(
    matrix: Sequence[Sequence[IntLaurent]],
    ks: Sequence[int],
    points: Sequence[tuple[int, ...]],
) -> list[IdealFingerprint]:
    """Fingerprints of E_k for each k from any presentation matrix of the module.

    Fitting ideals do not depend on the presentation, so a unit-eliminated
    matrix gives the same values as the original one.
    """
    rows = _polynomial_rows(matrix)
    per_point = [_fitting_from_rows(rows, len(matrix), pt, ks) for pt in points]
    pts = tuple(tuple(p) for p in points)
    return [IdealFingerprint(k, pts, tuple(v[k] for v in per_point)) for k in ks]


# ---------------------------------------------------------------------------
# Sign-specialized fingerprint
# ---------------------------------------------------------------------------


def permute_tors(v: Sequence[int], perm: dict[int, int], mod: int = 2) -> tuple[int, ...]:
    """Rewrite a torsion-coordinate vector of an element with free part 0.

    The element is sum c_i (t_i - 1) with c_i = v_{i-1} for i >= 2 and
    c_1 = -sum(v); relabelling sends the i-th term to the perm[i]-th.
    """
    mu = len(v) + 1
    c = [0] * (mu + 1)
    c[1] = -sum(v) % mod
    for i in range(2, mu + 1):
        c[i] = v[i - 2] % mod
    new = [0] * (mu + 1)
    for i in range(1, mu + 1):
        new[perm[i]] = c[i]
    return tuple(x % mod for x in new[2:])


@dataclass(frozen=True)
class NuFingerprint:
    rank: int
    torsion: tuple[int, ...]
    torsion_image: frozenset
    mu: int
    status: str = "exact"

    def permuted(self, perm: dict[int, int]) -> NuFingerprint:
        image = frozenset(permute_tors(v, perm) for v in self.torsion_image)
        return NuFingerprint(self.rank, self.torsion, image, self.mu, self.status)

    def group_string(self) -> str:
        parts = ["Z"] * self.rank + [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "torsion": list(self.torsion),
            "torsion_image": [list(v) for v in sorted(self.torsion_image)],
            "mu": self.mu,
            "status": self.status,
        }


def _span_mod2(vectors: Sequence[tuple[int, ...]], dim: int) -> frozenset:
    span = {tuple([0] * dim)}
    for v in vectors:
        if v in span:
            continue
        span |= {tuple((a + b) % 2 for a, b in zip(s, v)) for s in span}
    return frozenset(span)


def nu_fingerprint(
    A: Sequence[Sequence[int]],
    coords: Sequence[CrowellCoord],
    mu: int,
    cap: int = 1024,
) -> NuFingerprint:
    """Rank, torsion and the Crowell image of the torsion subgroup.

    New generators after the Smith form are the columns of U^-1 in terms of
    the old ones, so their images are the matching combinations of
    ``coords``.  The image of the torsion subgroup is the span of the
    torsion generators' images; when the subgroup is small enough it is
    also enumerated element by element as a cross-check.
    """
    g = len(A)
    if len(coords) != g:
        raise ValueError(f"{len(coords)} coordinates for {g} generators")
    dim = mu - 1
    if g == 0:
        return NuFingerprint(0, (), frozenset({tuple([0] * dim)}), mu)
    res = smith_integer(A, track=True)
    Ui = res.U_inv
    nonzero = [d for d in res.diag if d]
    rank = g - len(nonzero)
    images = []
    orders = []
    for i, d in enumerate(res.diag):
        if d <= 1:
            continue
        free = sum(Ui[r][i] * int(coords[r].free) for r in range(g))
        if free != 0:
            raise AssertionError(f"torsion generator {i} has free Crowell coordinate {free}")
        vec = tuple(
            sum(Ui[r][i] * coords[r].tors[k] for r in range(g)) % 2 for k in range(dim)
        )
        images.append(vec)
        orders.append(d)
    image = _span_mod2(images, dim)
    status = "exact"
    total = math.prod(orders) if orders else 1
    if total <= cap:
        enumerated = set()
        for combo in itertools.product(*(range(d) for d in orders)):
            enumerated.add(
                tuple(sum(c * v[k] for c, v in zip(combo, images)) % 2 for k in range(dim))
            )
        if frozenset(enumerated) != image:
            raise AssertionError("torsion image enumeration disagrees with its span")
        status = "exact (enumerated)"
    else:
        status = "exact (span; enumeration skipped above cap)"
    return NuFingerprint(rank, tuple(d for d in nonzero if d > 1), image, mu, status)


def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
