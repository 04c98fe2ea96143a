from __future__ import annotations

import json
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexlink.alexander import build_presentation, reduce_tau
from alexlink.diagram import (
    Arc,
    Crossing,
    DiagramError,
    LinkDiagram,
    MoveSpec,
    bigon_sites,
    insert_trivial_crossing,
    is_alternating,
    kink_sites,
    make_alternating,
    parse_diagram,
    parse_pd,
    prepare_triangle,
    reidemeister_move,
    remove_bigon,
    render,
    slide_triangle,
    split_union,
    trace_components,
    triangle_sites,
    validate,
)
from alexlink.distinguish import link_fingerprint
from alexlink.fixtures import load_fixture
from alexlink.fuzz import fuzz
from alexlink.modulealg import abelian_invariants, alexander_poly
from alexlink.alexander import specialize_nu
from alexlink.quandle import AffineQuandleSpec, count_colorings

UNKNOT_JSON = '{"mu":1,"arcs":[{"id":"c","component":1}],"crossings":[]}'


def canonical(d: LinkDiagram):
    return (
        d.mu,
        sorted((a.id, a.component) for a in d.arcs),
        sorted((c.id, c.over, c.under_in, c.under_out, c.writhe) for c in d.crossings),
    )


def same_up_to_arc_names(d1: LinkDiagram, d2: LinkDiagram) -> bool:
    """Crossing ids agree and some bijection of arcs carries one diagram to the other."""
    if d1.mu != d2.mu or len(d1.arcs) != len(d2.arcs):
        return False
    if {c.id for c in d1.crossings} != {c.id for c in d2.crossings}:
        return False
    mapping: dict[str, str] = {}
    for c1 in d1.crossings:
        c2 = d2.crossing(c1.id)
        if c1.writhe != c2.writhe:
            return False
        for x, y in ((c1.over, c2.over), (c1.under_in, c2.under_in), (c1.under_out, c2.under_out)):
            if mapping.setdefault(x, y) != y:
                return False
    closed1 = [a.id for a in d1.arcs if a.id not in mapping]
    closed2 = [a.id for a in d2.arcs if a.id not in set(mapping.values())]
    mapping.update(zip(closed1, closed2))
    if len(set(mapping.values())) != len(mapping) or len(mapping) != len(d1.arcs):
        return False
    return all(d1.arc(a).component == d2.arc(b).component for a, b in mapping.items())


def nu_group(d):
    p = specialize_nu(build_presentation(d))
    return abelian_invariants(p.matrix, len(p.generators))


# ---------------------------------------------------------------------------
# parsing and validation
# ---------------------------------------------------------------------------

def test_hopf_fixture_parses(hopf):
    assert hopf.mu == 2
    assert [a.id for a in hopf.arcs] == ["a", "b"]
    assert validate(hopf) == []


def test_unknot_json_parses():
    d = parse_diagram(UNKNOT_JSON)
    assert d.mu == 1 and len(d.arcs) == 1 and not d.crossings


def test_pd_hopf_matches_json_hopf(hopf):
    d = parse_diagram("X[1,3,2,4] X[3,1,4,2]")
    assert d.mu == 2 and len(d.crossings) == 2
    assert link_fingerprint(d).bundle_key() == link_fingerprint(hopf).bundle_key()


def test_pd_syntax_error_reports_position():
    with pytest.raises(DiagramError, match="position"):
        parse_pd("X[1,2,3,4] Y[1]")


def test_json_syntax_error():
    with pytest.raises(DiagramError):
        parse_diagram('{"mu": 1, "arcs": [')


def test_validate_wrong_component(hopf):
    a3 = LinkDiagram(2, hopf.arcs, tuple(
        replace(c, under_in="b") if c.id == "c2" else c for c in hopf.crossings
    ))
    assert validate(a3) == ["under arcs of crossing c2 on different components"]


def test_validate_missing_component():
    d = LinkDiagram(2, (Arc("c", 1),), ())
    assert validate(d) == ["component 2 has no arcs"]


def test_validate_rejects_broken_cycle():
    d = LinkDiagram(
        1,
        (Arc("a", 1), Arc("b", 1)),
        (Crossing("x", "a", "a", "a", 1), Crossing("y", "a", "b", "b", 1)),
    )
    assert any("single cycle" in p for p in validate(d))


def test_parse_rejects_invalid_diagram():
    text = json.dumps({"mu": 2, "arcs": [{"id": "c", "component": 1}], "crossings": []})
    with pytest.raises(DiagramError, match="component 2 has no arcs"):
        parse_diagram(text)
    assert parse_diagram(text, check=False).mu == 2


def test_render_round_trip(diagrams):
    for d in diagrams.values():
        text = render(d)
        back = parse_diagram(text)
        assert validate(back) == []
        assert canonical(back) == canonical(d)
        assert render(back) == text


def test_render_has_sorted_keys(hopf):
    text = render(hopf)
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert all(list(c) == sorted(c) for c in data["crossings"])


# ---------------------------------------------------------------------------
# tracing and unions
# ---------------------------------------------------------------------------

def test_trace_examples(hopf, trefoil, unknot):
    assert trace_components(hopf).cycles == {1: ("a",), 2: ("b",)}
    assert sorted(trace_components(trefoil).cycles[1]) == ["a", "b", "c"]
    assert len(trace_components(trefoil).cycles[1]) == 3
    union = split_union(hopf, unknot)
    assert trace_components(union).cycles == {1: ("a",), 2: ("b",), 3: ("c",)}


def test_trace_covers_every_arc(diagrams):
    for d in diagrams.values():
        cycles = trace_components(d).cycles
        assert len(cycles) == d.mu
        assert sum(len(c) for c in cycles.values()) == len(d.arcs)


def test_split_union_examples(hopf, trefoil, unknot):
    hu = split_union(hopf, unknot)
    assert (hu.mu, len(hu.arcs), len(hu.crossings)) == (3, 3, 2)
    tu = split_union(trefoil, parse_diagram('{"mu":1,"arcs":[{"id":"d","component":1}],"crossings":[]}'))
    assert (tu.mu, len(tu.arcs), len(tu.crossings)) == (2, 4, 3)
    hh = split_union(hopf, hopf)
    assert (hh.mu, len(hh.arcs), len(hh.crossings)) == (4, 4, 4)
    assert validate(hh) == []


def test_split_union_presentation_is_block_diagonal(hopf, trefoil):
    d = split_union(trefoil, hopf)
    p = build_presentation(d)
    comp = dict((a.id, a.component) for a in d.arcs)
    for i, gen in enumerate(p.generators):
        for j, rel in enumerate(p.relations):
            left_gen = comp[gen] == 1
            left_rel = rel.startswith("L.") or rel in {c.id for c in trefoil.crossings}
            if p.matrix[i][j]:
                assert left_gen == left_rel


# ---------------------------------------------------------------------------
# trivial crossings and alternating writhes
# ---------------------------------------------------------------------------

def test_kink_on_unknot(unknot):
    d = insert_trivial_crossing(unknot, "c", 1)
    assert len(d.crossings) == 1 and len(d.arcs) == 1
    (k,) = d.crossings
    assert k.over == k.under_in == k.under_out == "c"


def test_kink_on_hopf(hopf):
    d = insert_trivial_crossing(hopf, "a", -1)
    assert len(d.crossings) == 3 and len(d.arcs) == 3
    assert nu_group(d) == (1, [2])
    assert nu_group(hopf) == (1, [2])


def test_two_kinks_alternate(unknot):
    d = insert_trivial_crossing(insert_trivial_crossing(unknot, "c", 1), "c", -1)
    assert len(d.crossings) == 2
    assert is_alternating(d)


def test_unknown_arc_rejected(unknot):
    with pytest.raises(DiagramError):
        insert_trivial_crossing(unknot, "nope", 1)


def test_make_alternating_examples(unknot, hopf):
    u = make_alternating(unknot)
    assert len(u.crossings) == 2
    assert sorted(c.writhe for c in u.crossings) == [-1, 1]
    assert is_alternating(u)
    h = make_alternating(hopf)
    assert is_alternating(h)
    assert sum(1 for c in h.crossings if c.writhe == -1) == 2
    assert make_alternating(u) == u


def test_make_alternating_on_corpus(diagrams):
    for d in diagrams.values():
        out = make_alternating(d)
        assert is_alternating(out)
        assert validate(out) == []


# ---------------------------------------------------------------------------
# Reidemeister moves
# ---------------------------------------------------------------------------

def test_r1_preserves_colorings(unknot):
    spec = AffineQuandleSpec(5, 2)
    d = reidemeister_move(unknot, MoveSpec("R1+", arc="c"))
    assert len(d.crossings) == 1
    assert count_colorings(d, spec) == count_colorings(unknot, spec) == 5


def test_r1_inverse(trefoil):
    d = reidemeister_move(trefoil, MoveSpec("R1-", arc="a"))
    (k,) = kink_sites(d)
    back = reidemeister_move(d, MoveSpec("R1inv", crossing=k))
    assert canonical(back) == canonical(trefoil)


@pytest.mark.parametrize("placement", ["end", "start"])
@pytest.mark.parametrize("w", [1, -1])
def test_r2_then_r2inv_restores(trefoil, placement, w):
    d = reidemeister_move(trefoil, MoveSpec("R2", over="a", arc="b", writhe=w, placement=placement))
    assert len(d.crossings) == 5
    new = [c.id for c in d.crossings if c.id not in {"c1", "c2", "c3"}]
    sites = bigon_sites(d)
    site = next(s for s in sites if set(s) == set(new))
    back = reidemeister_move(d, MoveSpec("R2inv", crossings=site))
    assert same_up_to_arc_names(back, trefoil)


def test_bigon_problems(trefoil):
    with pytest.raises(DiagramError, match="R2inv"):
        remove_bigon(trefoil, "c1", "c2")


def test_r3_on_trefoil_keeps_delta(trefoil):
    before = alexander_poly(reduce_tau(build_presentation(trefoil)), 1)
    prepared, site = prepare_triangle(trefoil, "c1", "a", 1)
    assert site in triangle_sites(prepared)
    after = slide_triangle(prepared, *site)
    assert validate(after) == []
    assert len(after.crossings) == 7
    assert alexander_poly(reduce_tau(build_presentation(after)), 1) == before
    assert str(before) == "1 - t + t^2"


def test_r3_rejects_non_site(trefoil):
    with pytest.raises(DiagramError, match="R3"):
        reidemeister_move(trefoil, MoveSpec("R3", crossings=("c1", "c2", "c3")))


def test_unknown_move_kind(trefoil):
    with pytest.raises(DiagramError):
        reidemeister_move(trefoil, MoveSpec("R4"))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["trefoil", "hopf", "hopf-unknot", "l-prime"]))
def test_random_moves_stay_valid(seed, name):
    d = load_fixture(name).diagram
    out = fuzz(d, 12, seed).diagram
    assert validate(out) == []
    assert out.mu == d.mu


def test_fuzz_is_deterministic(trefoil):
    a = fuzz(trefoil, 15, 3)
    b = fuzz(trefoil, 15, 3)
    assert a.moves == b.moves and canonical(a.diagram) == canonical(b.diagram)
    assert len(a.moves) == 15
