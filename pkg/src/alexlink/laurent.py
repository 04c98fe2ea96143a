"""Sparse Laurent polynomials with exact coefficients.

``IntLaurent`` is an element of Z[t_1^{+-1}, ..., t_mu^{+-1}] stored as a map
from exponent tuples to nonzero integers.  ``RatLaurent`` is the univariate
rational counterpart used for Euclidean elimination.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]


class IntLaurent:
    """Immutable multivariate Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | None = None, nvars: int = 1):
        if nvars < 1:
            raise ValueError("a Laurent ring needs at least one variable")
        clean: dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have length {nvars}")
            if coeff:
                clean[exps] = int(coeff)
        self._terms = clean
        self.nvars = nvars
        self._hash = None

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, nvars: int = 1) -> IntLaurent:
        return cls({}, nvars)

    @classmethod
    def const(cls, c: int, nvars: int = 1) -> IntLaurent:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def one(cls, nvars: int = 1) -> IntLaurent:
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int = 1) -> IntLaurent:
        """The variable t_i (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls({tuple(exps): 1}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> IntLaurent:
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], shift: int = 0) -> IntLaurent:
        """Univariate polynomial from a low-to-high coefficient list times t^shift."""
        return cls({(shift + k,): c for k, c in enumerate(coeffs) if c}, 1)

    # -- basic protocol ------------------------------------------------
    @property
    def terms(self) -> list[tuple[Exponents, int]]:
        return sorted(self._terms.items())

    def coeff(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_unit(self) -> bool:
        """Units of the integer Laurent ring are exactly the monomials +-t^m."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.nvars}

    def constant_value(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntLaurent.const(other, self.nvars)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"IntLaurent({str(self)!r}, nvars={self.nvars})"

    def __str__(self) -> str:
        return format_laurent(self._terms, self.nvars)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> IntLaurent:
        if isinstance(other, IntLaurent):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, int):
            return IntLaurent.const(other, self.nvars)
        raise TypeError(f"cannot combine IntLaurent with {type(other).__name__}")

    def __add__(self, other) -> IntLaurent:
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> IntLaurent:
        return _raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other) -> IntLaurent:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> IntLaurent:
        return self._coerce(other) - self

    def __mul__(self, other) -> IntLaurent:
        if isinstance(other, int):
            if other == 0:
                return IntLaurent.zero(self.nvars)
            return _raw({e: c * other for e, c in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        out: dict[Exponents, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntLaurent(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntLaurent:
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = IntLaurent.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def unit_inverse(self) -> IntLaurent:
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        ((e, c),) = self._terms.items()
        return _raw({tuple(-x for x in e): c}, self.nvars)

    def shift(self, exps: Sequence[int]) -> IntLaurent:
        """Multiply by the monomial t^exps."""
        return _raw(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
            self.nvars,
        )

    # -- structure -----------------------------------------------------
    def min_exponents(self) -> Exponents:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def permute_vars(self, perm: Mapping[int, int]) -> IntLaurent:
        """Send t_i to t_{perm[i]} (1-based indices)."""
        out = {}
        for e, c in self._terms.items():
            new = [0] * self.nvars
            for i, x in enumerate(e, start=1):
                new[perm[i] - 1] = x
            out[tuple(new)] = c
        return _raw(out, self.nvars)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def coeff_sum(self) -> int:
        return sum(self._terms.values())

    # univariate helpers
    def _require_univariate(self) -> None:
        if self.nvars != 1:
            raise ValueError("operation needs a univariate Laurent polynomial")

    def low_degree(self) -> int:
        self._require_univariate()
        return min(e[0] for e in self._terms) if self._terms else 0

    def high_degree(self) -> int:
        self._require_univariate()
        return max(e[0] for e in self._terms) if self._terms else 0

    def span(self) -> int:
        """Degree of the polynomial part after removing the power of t (-1 for zero)."""
        if not self._terms:
            return -1
        return self.high_degree() - self.low_degree()

    def coeff_list(self) -> list[int]:
        """Low-to-high coefficients of p * t^(-low_degree)."""
        self._require_univariate()
        if not self._terms:
            return []
        lo, hi = self.low_degree(), self.high_degree()
        return [self._terms.get((k,), 0) for k in range(lo, hi + 1)]

    def to_rat(self) -> RatLaurent:
        self._require_univariate()
        return RatLaurent({e[0]: Fraction(c) for e, c in self._terms.items()})


def _raw(terms: dict[Exponents, int], nvars: int) -> IntLaurent:
    # trusted constructor: keys already validated and coefficients nonzero
    p = IntLaurent.__new__(IntLaurent)
    p._terms = terms
    p.nvars = nvars
    p._hash = None
    return p


def _var_name(i: int, nvars: int) -> str:
    return "t" if nvars == 1 else f"t{i}"


def _format_monomial(exps: Sequence[int], nvars: int) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 0:
            continue
        name = _var_name(i, nvars)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_laurent(terms: Mapping, nvars: int) -> str:
    """Render terms sorted by exponent, e.g. ``1 - t1 - t2 + t1*t2``."""
    if not terms:
        return "0"
    items = [((e if isinstance(e, tuple) else (e,)), c) for e, c in terms.items()]
    # total degree first, then earlier variables first
    items.sort(key=lambda item: (sum(item[0]), [-x for x in item[0]]))
    out = []
    for exps, c in items:
        mono = _format_monomial(exps, nvars)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def parse_laurent(text: str, nvars: int | None = None) -> IntLaurent:
    """Parse the rendering grammar back into an ``IntLaurent``.

    ``nvars`` defaults to 1 when only ``t`` appears, otherwise to the largest
    variable index seen.
    """
    terms: dict[Exponents, int] = {}
    raw_terms: list[tuple[int, dict[int, int]]] = []
    pos = 0
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    sign = 1
    expect_term = True
    coeff: int | None = None
    mono: dict[int, int] = {}
    max_index = 0
    saw_plain_t = False

    def flush():
        nonlocal coeff, mono
        raw_terms.append((sign * (1 if coeff is None else coeff), mono))
        coeff, mono = None, {}

    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        ch = s[pos]
        if ch in "+-":
            if not expect_term:
                flush()
                expect_term = True
                sign = 1
            sign *= -1 if ch == "-" else 1
            pos += 1
            continue
        if ch.isdigit():
            m = re.match(r"\d+", s[pos:])
            if coeff is not None or mono:
                raise ValueError(f"unexpected number at position {pos} in {text!r}")
            coeff = int(m.group())
            pos += m.end()
            expect_term = False
            if pos < len(s) and s[pos] == "*":
                pos += 1
            continue
        if ch == "t":
            m = re.match(r"t(\d*)", s[pos:])
            idx = int(m.group(1)) if m.group(1) else 1
            if m.group(1):
                max_index = max(max_index, idx)
            else:
                saw_plain_t = True
            pos += m.end()
            exp = 1
            if pos < len(s) and s[pos] == "^":
                m2 = re.match(r"\^\(?(-?\d+)\)?", s[pos:])
                if not m2:
                    raise ValueError(f"bad exponent at position {pos} in {text!r}")
                exp = int(m2.group(1))
                pos += m2.end()
            mono[idx] = mono.get(idx, 0) + exp
            expect_term = False
            if pos < len(s) and s[pos] == "*":
                pos += 1
            continue
        raise ValueError(f"unexpected character {ch!r} at position {pos} in {text!r}")
    if expect_term:
        raise ValueError(f"dangling operator in {text!r}")
    flush()

    if nvars is None:
        nvars = max(max_index, 1)
    if saw_plain_t and nvars != 1 and max_index:
        raise ValueError(f"mixed 't' and indexed variables in {text!r}")
    for c, mono in raw_terms:
        exps = [0] * nvars
        for idx, e in mono.items():
            if idx > nvars:
                raise ValueError(f"variable t{idx} exceeds {nvars} variables")
            exps[idx - 1] += e
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + c
    return IntLaurent(terms, nvars)


# ---------------------------------------------------------------------------
# Operations on IntLaurent
# ---------------------------------------------------------------------------


def lp_add(p: IntLaurent, q: IntLaurent) -> IntLaurent:
    return p + q


def lp_mul(p: IntLaurent, q: IntLaurent) -> IntLaurent:
    return p * q


def lp_substitute_tau(p: IntLaurent) -> IntLaurent:
    """Image under t_i -> t for every i."""
    out: dict[Exponents, int] = {}
    for e, c in p._terms.items():
        k = (sum(e),)
        out[k] = out.get(k, 0) + c
    return IntLaurent(out, 1)


def lp_evaluate(p: IntLaurent, point: Sequence, modulus: int | None = None):
    """Evaluate at ``point``; exact rational result, or a residue mod ``modulus``.

    Coordinates must be invertible so that negative exponents make sense.
    """
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    if modulus is None:
        pt = [Fraction(x) for x in point]
        if any(x == 0 for x in pt):
            raise ZeroDivisionError("evaluation point has a zero coordinate")
        total = Fraction(0)
        for e, c in p._terms.items():
            term = Fraction(c)
            for x, k in zip(pt, e):
                if k:
                    term *= x**k
            total += term
        return total.numerator if total.denominator == 1 else total
    if modulus < 1:
        raise ValueError("modulus must be positive")
    pt = [int(x) % modulus for x in point]
    inv = []
    for x in pt:
        if math.gcd(x, modulus) != 1:
            raise ZeroDivisionError(f"{x} is not a unit mod {modulus}")
        inv.append(pow(x, -1, modulus) if modulus > 1 else 0)
    total = 0
    for e, c in p._terms.items():
        term = c % modulus
        for x, xi, k in zip(pt, inv, e):
            if k > 0:
                term = term * pow(x, k, modulus) % modulus
            elif k < 0:
                term = term * pow(xi, -k, modulus) % modulus
        total = (total + term) % modulus
    return total


def nu(p: IntLaurent) -> int:
    """Evaluate at every variable equal to -1."""
    return sum(c * (-1) ** (sum(e) & 1) for e, c in p._terms.items())


def augmentation(p: IntLaurent) -> int:
    """Evaluate at every variable equal to 1."""
    return p.coeff_sum()


def lp_normalize_unit(p: IntLaurent) -> IntLaurent:
    """Associate +-t^m * p with lowest exponent 0 and positive lowest coefficient."""
    if not p:
        return p
    p._require_univariate()
    lo = p.low_degree()
    sign = 1 if p.coeff((lo,)) > 0 else -1
    return _raw({(e[0] - lo,): sign * c for e, c in p._terms.items()}, 1)


# -- univariate integer polynomials as low-to-high coefficient lists ----------


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _primitive(a: list[int]) -> list[int]:
    g = _poly_content(a)
    if g == 0:
        return []
    out = [c // g for c in a]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b."""
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    k = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        coef = a[-1]
        shift = len(a) - 1 - db
        a = [lc * c for c in a]
        for i, bc in enumerate(b):
            a[shift + i] -= coef * bc
        k -= 1
        _trim(a)
    if k > 0:
        a = [c * lc**k for c in a]
    return a


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """gcd in Z[t] via contents and a primitive remainder sequence."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a:
        return b
    if not b:
        return a
    cont = math.gcd(_poly_content(a), _poly_content(b))
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return [cont * c for c in a]


def lp_gcd_univariate(p: IntLaurent, q: IntLaurent) -> IntLaurent:
    """gcd in Z[t^{+-1}], returned in ``lp_normalize_unit`` form."""
    p._require_univariate()
    q._require_univariate()
    if not p:
        return lp_normalize_unit(q)
    if not q:
        return lp_normalize_unit(p)
    g = _poly_gcd(p.coeff_list(), q.coeff_list())
    return lp_normalize_unit(IntLaurent.from_coeffs(g))


def lp_gcd_many(polys: Iterable[IntLaurent]) -> IntLaurent:
    g = IntLaurent.zero(1)
    for p in polys:
        g = lp_gcd_univariate(g, p)
        if g == 1:
            break
    return g


def lp_divexact_univariate(p: IntLaurent, q: IntLaurent) -> IntLaurent:
    """Exact quotient p/q in Z[t^{+-1}]; raises if q does not divide p."""
    quo, rem = rat_divmod(p.to_rat(), q.to_rat())
    if rem or any(c.denominator != 1 for c in quo.coeffs.values()):
        raise ValueError(f"{q} does not divide {p} over the integers")
    return IntLaurent({(e,): int(c) for e, c in quo.coeffs.items()}, 1)


# ---------------------------------------------------------------------------
# Rational univariate Laurent polynomials
# ---------------------------------------------------------------------------


class RatLaurent:
    """Immutable element of Q[t^{+-1}]: exponent -> nonzero Fraction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction | int] | None = None):
        self.coeffs = {int(e): Fraction(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def const(cls, c) -> RatLaurent:
        return cls({0: c})

    @classmethod
    def from_int(cls, p: IntLaurent) -> RatLaurent:
        return p.to_rat()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatLaurent.const(other)
        if not isinstance(other, RatLaurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"RatLaurent({str(self)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for e, c in sorted(self.coeffs.items()):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(out)

    def _coerce(self, other) -> RatLaurent:
        if isinstance(other, RatLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return RatLaurent.const(other)
        if isinstance(other, IntLaurent):
            return other.to_rat()
        raise TypeError(f"cannot combine RatLaurent with {type(other).__name__}")

    def __add__(self, other) -> RatLaurent:
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _rat_raw(out)

    __radd__ = __add__

    def __neg__(self) -> RatLaurent:
        return _rat_raw({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> RatLaurent:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RatLaurent:
        return self._coerce(other) - self

    def __mul__(self, other) -> RatLaurent:
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatLaurent()
            return _rat_raw({e: c * other for e, c in self.coeffs.items()})
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return RatLaurent(out)

    __rmul__ = __mul__

    def low(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def high(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def span(self) -> int:
        return self.high() - self.low() if self.coeffs else -1

    def is_unit(self) -> bool:
        """Units of Q[t^{+-1}] are the nonzero monomials."""
        return len(self.coeffs) == 1

    def shift(self, k: int) -> RatLaurent:
        return _rat_raw({e + k: c for e, c in self.coeffs.items()})

    def unit_inverse(self) -> RatLaurent:
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        ((e, c),) = self.coeffs.items()
        return _rat_raw({-e: 1 / c})

    def monic_normal(self) -> RatLaurent:
        """Associate with lowest exponent 0 and leading coefficient 1."""
        if not self.coeffs:
            return self
        lo = self.low()
        lead = self.coeffs[self.high()]
        return _rat_raw({e - lo: c / lead for e, c in self.coeffs.items()})

    def to_int(self) -> IntLaurent:
        """Primitive integer associate (denominators cleared, content removed)."""
        if not self.coeffs:
            return IntLaurent.zero(1)
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {(e,): int(c * den) for e, c in self.coeffs.items()}
        p = IntLaurent(ints, 1)
        g = p.content()
        return IntLaurent({k: v // g for k, v in ints.items()}, 1)


def _rat_raw(coeffs: dict[int, Fraction]) -> RatLaurent:
    r = RatLaurent.__new__(RatLaurent)
    r.coeffs = coeffs
    return r


def rat_divmod(p: RatLaurent, q: RatLaurent) -> tuple[RatLaurent, RatLaurent]:
    """Division with remainder in Q[t^{+-1}].

    q is shifted to an ordinary polynomial with nonzero constant term and p
    to an ordinary polynomial (only when it has negative exponents); the
    result satisfies p = q*quotient + remainder with span(remainder) < span(q).
    """
    if not q:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    sp = min(p.low(), 0) if p else 0
    sq = q.low()
    num = {e - sp: c for e, c in p.coeffs.items()}
    den = {e - sq: c for e, c in q.coeffs.items()}
    dq = max(den)
    lead = den[dq]
    quo: dict[int, Fraction] = {}
    while num:
        dn = max(num)
        if dn < dq:
            break
        factor = num[dn] / lead
        k = dn - dq
        quo[k] = factor
        for e, c in den.items():
            v = num.get(e + k, 0) - factor * c
            if v:
                num[e + k] = v
            else:
                num.pop(e + k, None)
    quotient = _rat_raw({e + sp - sq: c for e, c in quo.items()})
    remainder = _rat_raw({e + sp: c for e, c in num.items()})
    return quotient, remainder
