import pytest

from lclkit.engine import STRICT, exhaustive_oracle, solve_finite_palette, verify
from lclkit.errors import (
    MalformedInput,
    NoSubsequentOne,
    NotColorable,
    RootNotPositive,
    StuckInterior,
    WitnessInvalid,
)
from lclkit.graph import Coloring, build_structured_graph, parent_child, tree_vertex
from lclkit.regtree import BranchWitness, branch_prefix, decide_F, truncate
from lclkit.sigma_pi import (
    ANCHOR_ID,
    ComponentSpec,
    build_component,
    component_colorable,
    component_spec_to_json,
    extract_branch,
    k_of,
    parse_component_spec,
    pi_coloring_for_component,
    pi_problem,
    sigma_coloring_from_branch,
    sigma_problem,
    truncation_mode,
)

from corpus import ALTERNATING, FULL, ONE, SINGLE_ONE, ZERO, automata

ALT = BranchWitness("", "01")
ALL_ONES = BranchWitness("", "1")


def pair(parent_color, child_color, side):
    G = build_structured_graph(
        ["p", "c"], {"p": tree_vertex(0, False), "c": tree_vertex(0, False)}, [("p", "c")],
        {("p", "c"): parent_child("p", side)},
    )
    return G, Coloring({"p": parent_color, "c": child_color})


def sigma_ok_at(G, f, v):
    return v not in verify(G, f, sigma_problem(), STRICT).failures


def test_sigma_rule_examples():
    root = build_structured_graph(["r"], {"r": tree_vertex(0, True)})
    assert not sigma_ok_at(root, Coloring({}), "r")
    assert sigma_ok_at(*pair(1, 2, "right"), "p")
    assert not sigma_ok_at(*pair(1, 2, "left"), "p")
    assert not sigma_ok_at(*pair(3, 1, "left"), "p")
    assert sigma_ok_at(*pair(3, 2, "left"), "p")
    assert sigma_ok_at(*pair(0, 5, "left"), "p")


def pi_ok_at_anchor(colors):
    G = build_component(ComponentSpec(FULL, FULL, 1))
    return ANCHOR_ID not in verify(G, Coloring(colors), pi_problem(), STRICT).failures


def test_pi_anchor_examples():
    assert not pi_ok_at_anchor({})
    assert not pi_ok_at_anchor({"t0/": 1, "t1/": 2})
    assert pi_ok_at_anchor({"t0/": 1, "t0/1": 1})
    # the anchor only counts neighbors; the root's own rule is separate
    assert pi_ok_at_anchor({"t1/": 1})


def test_k_of():
    assert [k_of(ALL_ONES, s) for s in range(5)] == [0] * 5
    assert k_of(ALT, 0) == 1 and k_of(ALT, 1) == 0
    assert k_of(BranchWitness("000", "1"), 0) == 3


def test_k_of_guard():
    class Corrupt:
        stem, cycle = "", "0"

    with pytest.raises(NoSubsequentOne):
        k_of(Corrupt(), 0)


def test_sigma_coloring_examples():
    f = sigma_coloring_from_branch(ALTERNATING, ALT, 3)
    assert f.support() == {"t/": 2, "t/0": 1, "t/01": 2, "t/010": 1}
    g = sigma_coloring_from_branch(FULL, ALL_ONES, 2)
    assert g.support() == {"t/": 1, "t/1": 1, "t/11": 1}
    assert sigma_coloring_from_branch(FULL, ALT, 0).support() == {"t/": 2}
    with pytest.raises(WitnessInvalid):
        sigma_coloring_from_branch(ZERO, ALL_ONES, 2)


def test_extract_branch_examples():
    T = truncate(ALTERNATING, 3)
    assert extract_branch(T, sigma_coloring_from_branch(ALTERNATING, ALT, 3)) == "010"
    F2 = truncate(FULL, 2)
    assert extract_branch(F2, Coloring({v: 1 for v in F2.vertices})) == "11"
    with pytest.raises(RootNotPositive):
        extract_branch(F2, Coloring({}))
    with pytest.raises(StuckInterior) as info:
        extract_branch(F2, Coloring({"t/": 2, "t/0": 0}))
    assert info.value.vertex == "t/"
    # a 1 with no right child below the frontier
    with pytest.raises(StuckInterior):
        extract_branch(truncate(ZERO, 2), Coloring({"t/": 1}))


def test_extract_branch_needs_one_root():
    G = build_component(ComponentSpec(FULL, FULL, 1))
    with pytest.raises(MalformedInput):
        extract_branch(G, Coloring({}))


def not_in_f():
    for A in automata(2):
        d = decide_F(A)
        if not d.in_f:
            yield A, d.witness


def test_constructed_colorings_verify_and_round_trip():
    for A, w in not_in_f():
        for d in range(8):
            T = truncate(A, d)
            f = sigma_coloring_from_branch(A, w, d)
            assert verify(T, f, sigma_problem(), truncation_mode(T, d)).ok, (A, d)
            assert extract_branch(T, f) == branch_prefix(w, d)


def test_colors_descend_between_ones():
    for A, w in not_in_f():
        d = 10
        f = sigma_coloring_from_branch(A, w, d)
        beta = branch_prefix(w, d)
        run = [f["t/" + beta[:j]] for j in range(d + 1)]
        for a, b in zip(run, run[1:]):
            assert b == a - 1 or a == 1


@pytest.mark.parametrize("d", range(6))
def test_palette_dichotomy_on_zero_tree(d):
    T = truncate(ZERO, d)
    mode = truncation_mode(T, d)
    for k in range(1, d + 4):
        expected = k >= d + 2
        assert solve_finite_palette(T, sigma_problem(), k, mode).sat is expected
        assert exhaustive_oracle(T, sigma_problem(), k, mode).sat is expected


def test_in_f_trees_eventually_refuse_four_colors():
    for A in automata(2):
        if decide_F(A).in_f:
            assert any(
                not solve_finite_palette(truncate(A, d), sigma_problem(), 4, truncation_mode(truncate(A, d), d)).sat
                for d in range(10)
            ), A


def test_component_build():
    G = build_component(ComponentSpec(ZERO, ZERO, 2))
    assert len(G) == 7
    assert G.degree(ANCHOR_ID) == 2
    assert G.vertex_kind["t1/00"].tree_index == 1
    for A0 in automata(2)[:8]:
        for A1 in automata(2)[:8]:
            H = build_component(ComponentSpec(A0, A1, 3))
            assert H.degree(ANCHOR_ID) == 2
            assert max(H.degree(v) for v in H.vertices) <= 3


def test_component_spec_json():
    spec = ComponentSpec(SINGLE_ONE, ONE, 4)
    assert parse_component_spec(component_spec_to_json(spec)) == spec
    with pytest.raises(MalformedInput):
        parse_component_spec({"a0": component_spec_to_json(spec)["a0"], "depth": 1})
    with pytest.raises(MalformedInput):
        ComponentSpec(ZERO, ZERO, -1)


def test_component_colorable_examples():
    assert component_colorable(FULL, ZERO)
    assert not component_colorable(ZERO, ZERO)
    assert component_colorable(FULL, FULL)


def test_pi_coloring_examples():
    f = pi_coloring_for_component(ComponentSpec(FULL, ZERO, 3))
    assert set(f.support()) == {"t0/", "t0/1", "t0/11", "t0/111"}
    g = pi_coloring_for_component(ComponentSpec(ZERO, FULL, 3))
    assert all(v.startswith("t1/") for v in g.support())
    with pytest.raises(NotColorable):
        pi_coloring_for_component(ComponentSpec(ZERO, ZERO, 3))


def test_components_with_both_trees_in_f_run_out_of_room():
    # with four colors a positive chain has two descents of three, so depth 5 is the last that fits
    for d, expected in ((5, True), (6, False)):
        G = build_component(ComponentSpec(ZERO, SINGLE_ONE, d))
        assert solve_finite_palette(G, pi_problem(), 4, truncation_mode(G, d)).sat is expected
