from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexlink.laurent import (
    IntLaurent,
    RatLaurent,
    augmentation,
    lp_add,
    lp_divexact_univariate,
    lp_evaluate,
    lp_gcd_univariate,
    lp_mul,
    lp_normalize_unit,
    lp_substitute_tau,
    nu,
    parse_laurent,
    rat_divmod,
)


def P(text, nvars=None):
    return parse_laurent(text, nvars)


def test_add_examples():
    assert lp_add(P("t1 - 1", 2), P("1 - t1", 2)) == IntLaurent.zero(2)
    assert lp_add(P("t - 1"), P("t - 1")) == P("2*t - 2")
    assert lp_add(P("t1*t2 + 1", 2), P("t1*t2", 2)) == P("2*t1*t2 + 1", 2)


def test_mul_examples():
    assert lp_mul(P("t^-1"), P("t")) == IntLaurent.one(1)
    assert lp_mul(P("t - 1"), P("t + 1")) == P("t^2 - 1")
    assert lp_mul(P("1 - t2", 2), P("1 - t1", 2)) == P("1 - t1 - t2 + t1*t2", 2)


def test_mismatched_varcount_rejected():
    with pytest.raises(ValueError):
        lp_add(P("t"), P("t1", 2))
    with pytest.raises(ValueError):
        lp_mul(P("t"), P("t1", 2))


def test_substitute_tau_examples():
    assert lp_substitute_tau(P("t1*t2^-1", 2)) == IntLaurent.one(1)
    assert lp_substitute_tau(P("1 - t2", 2)) == P("1 - t")
    assert lp_substitute_tau(P("1 - t1 + t1^2", 2)) == P("1 - t + t^2")


def test_evaluate_examples():
    for i in (1, 2, 3):
        assert augmentation(IntLaurent.var(i, 3) - 1) == 0
    assert nu(P("1 - t")) == 2
    assert lp_evaluate(P("1 - t1", 2) * P("1 - t2", 2), (3, 5)) == 8


def test_evaluate_rejects_non_units():
    with pytest.raises(ZeroDivisionError):
        lp_evaluate(P("t^-1"), (0,))
    with pytest.raises(ZeroDivisionError):
        lp_evaluate(P("t^-1"), (2,), modulus=4)
    assert lp_evaluate(P("t^-1"), (3,), modulus=4) == 3


def test_normalize_examples():
    assert lp_normalize_unit(P("-t^3 + 3*t^2 - t")) == P("t^2 - 3*t + 1")
    assert lp_normalize_unit(IntLaurent.zero(1)) == IntLaurent.zero(1)
    assert lp_normalize_unit(P("t^2 - t + 1")) == P("t^2 - t + 1")


def test_gcd_examples():
    assert lp_gcd_univariate(P("t^2 - 1"), P("t - 1")) == lp_normalize_unit(P("t - 1"))
    assert lp_gcd_univariate(P("2*t - 2"), P("4*t - 4")) == lp_normalize_unit(P("2*t - 2"))
    assert lp_gcd_univariate(P("t^2 - t + 1"), P("t - 1")) == IntLaurent.one(1)
    assert lp_gcd_univariate(P("-t^3 + t"), IntLaurent.zero(1)) == lp_normalize_unit(P("-t^3 + t"))


def _check_divmod(p, q):
    quo, rem = rat_divmod(p, q)
    assert q * quo + rem == p
    return quo, rem


def test_divmod_examples():
    t = RatLaurent({1: 1})
    one = RatLaurent.const(1)
    assert rat_divmod(t * t - one, t - one) == (t + one, RatLaurent())
    quo, rem = _check_divmod(t, t - one)
    assert quo == one and rem == one
    assert rat_divmod(t - one, t - one) == (one, RatLaurent())
    with pytest.raises(ZeroDivisionError):
        rat_divmod(t, RatLaurent())


def test_text_round_trip():
    for text, nvars in [("1 - t1 - t2 + t1*t2", 2), ("1 - t + t^2", 1), ("-3*t^-2 + 7", 1)]:
        p = P(text, nvars)
        assert P(str(p), nvars) == p
    assert str(P("1 - t1 - t2 + t1*t2", 2)) == "1 - t1 - t2 + t1*t2"


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

def laurent(nvars, max_terms=4, max_exp=3, max_coeff=6):
    exps = st.tuples(*[st.integers(-max_exp, max_exp)] * nvars)
    coeffs = st.integers(-max_coeff, max_coeff)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: IntLaurent(d, nvars)
    )


uni = laurent(1)
tri = laurent(3)


@given(tri, tri, tri)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@given(tri, tri)
def test_tau_is_a_homomorphism(p, q):
    assert lp_substitute_tau(p + q) == lp_substitute_tau(p) + lp_substitute_tau(q)
    assert lp_substitute_tau(p * q) == lp_substitute_tau(p) * lp_substitute_tau(q)


@given(tri, tri, st.tuples(*[st.sampled_from([1, -1, 2, 3, -5])] * 3))
def test_evaluate_is_a_homomorphism(p, q, point):
    ev = lambda x: lp_evaluate(x, point)  # noqa: E731
    assert ev(p + q) == ev(p) + ev(q)
    assert ev(p * q) == ev(p) * ev(q)
    mod = 7
    assert lp_evaluate(p * q, point, mod) == lp_evaluate(p, point, mod) * lp_evaluate(q, point, mod) % mod


@given(uni, st.integers(-5, 5), st.sampled_from([1, -1]))
def test_normalize_ignores_units(p, m, sign):
    unit = IntLaurent.monomial((m,), sign)
    n = lp_normalize_unit(p)
    assert lp_normalize_unit(unit * p) == n
    assert lp_normalize_unit(n) == n


FACTOR_POOL = ["t - 1", "t + 1", "t^2 - t + 1", "2", "3", "t^2 - 3*t + 1", "2*t + 3"]


@settings(max_examples=60)
@given(
    st.lists(st.sampled_from(FACTOR_POOL), max_size=3),
    st.lists(st.sampled_from(FACTOR_POOL), max_size=3),
    st.lists(st.sampled_from(FACTOR_POOL), max_size=3),
    st.integers(-3, 3),
)
def test_gcd_divides_and_is_greatest(common, extra1, extra2, shift):
    def prod(names):
        out = IntLaurent.one(1)
        for n in names:
            out = out * P(n)
        return out

    c = prod(common)
    p = c * prod(extra1) * IntLaurent.monomial((shift,))
    q = c * prod(extra2)
    g = lp_gcd_univariate(p, q)
    lp_divexact_univariate(p, g)
    lp_divexact_univariate(q, g)
    lp_divexact_univariate(g, c)
    assert g == lp_normalize_unit(g)


rat = st.dictionaries(
    st.integers(-3, 3), st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=4
).map(RatLaurent)


@given(rat, rat)
def test_divmod_reconstructs(p, q):
    if not q:
        return
    quo, rem = rat_divmod(p, q)
    assert q * quo + rem == p
    if rem:
        assert rem.span() < q.span()
    assert isinstance(quo, RatLaurent)
    assert all(isinstance(c, Fraction) for c in quo.coeffs.values())
