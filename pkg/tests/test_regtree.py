import pytest
from hypothesis import given
from hypothesis import strategies as st

from lclkit.errors import CorpusTooLarge, MalformedInput, NotPrunedError, UnknownState
from lclkit.graph import Side
from lclkit.regtree import (
    BranchWitness,
    NotPruned,
    TreeAutomaton,
    automaton_to_json,
    branch_prefix,
    decide_F,
    enumerate_automata,
    members,
    membership,
    parse_automaton,
    truncate,
    validate_pruned,
    witness_valid,
)

from corpus import ALTERNATING, FULL, ONE, SINGLE_ONE, ZERO, automata
from oracles import accepted_words, brute_lasso


def test_parse_round_trip():
    doc = {"states": ["a", "b"], "initial": "a", "delta": {"a": {"0": "b", "1": "a"}, "b": {"1": "b"}}}
    A = parse_automaton(doc)
    assert automaton_to_json(A) == doc
    assert parse_automaton(automaton_to_json(A)) == A


@pytest.mark.parametrize(
    "doc, exc",
    [
        ({"states": ["q"], "initial": "q", "delta": {}}, NotPrunedError),
        ({"states": ["q"], "initial": "q", "delta": {"q": {"0": "r"}}}, UnknownState),
        ({"states": ["q"], "initial": "r", "delta": {"q": {"0": "q"}}}, UnknownState),
        ({"states": ["q"], "initial": "q", "delta": {"q": {"2": "q"}}}, MalformedInput),
        ({"states": ["q"], "delta": {"q": {"0": "q"}}}, MalformedInput),
        ({"states": "q", "initial": "q"}, MalformedInput),
        ("not json", MalformedInput),
    ],
)
def test_parse_errors(doc, exc):
    with pytest.raises(exc):
        parse_automaton(doc)


def test_validate_pruned():
    assert validate_pruned(FULL) is None
    A = parse_automaton({"states": ["q0"], "initial": "q0", "delta": {}}, require_pruned=False)
    assert validate_pruned(A) == NotPruned("q0")
    # an unreachable dead state is fine
    B = TreeAutomaton(["q0", "dead"], "q0", {("q0", 0): "q0"})
    assert validate_pruned(B) is None
    C = TreeAutomaton(["q0", "dead"], "q0", {("q0", 0): "dead"})
    assert validate_pruned(C) == NotPruned("dead")


def test_membership():
    for A in (FULL, ZERO, ONE, SINGLE_ONE):
        assert membership(A, "")
    assert membership(FULL, "0110101")
    assert not membership(ZERO, "01")
    assert membership(SINGLE_ONE, "00100") and not membership(SINGLE_ONE, "0101")


def test_truncate_examples():
    assert len(truncate(FULL, 2)) == 7
    path = truncate(ZERO, 4)
    assert len(path) == 5 and len(path.edges) == 4
    root = truncate(FULL, 0)
    assert root.vertices == ("t/",) and root.vertex_kind["t/"].is_root
    T = truncate(FULL, 1)
    assert T.children("t/") == {Side.LEFT: "t/0", Side.RIGHT: "t/1"}
    with pytest.raises(MalformedInput):
        truncate(FULL, -1)


@pytest.mark.parametrize("d", range(9))
def test_truncate_counts_match_enumeration(d):
    for A in automata(2):
        assert len(truncate(A, d)) == len(accepted_words(A, d)) == len(members(A, d))


def test_decide_examples():
    assert decide_F(FULL).witness == BranchWitness("", "1")
    assert decide_F(ZERO).in_f
    assert decide_F(SINGLE_ONE).in_f
    assert decide_F(ALTERNATING).witness == BranchWitness("", "01")


def test_decide_agrees_with_brute_lasso_up_to_two_states():
    for A in automata(2):
        n = len(A.states)
        expected = brute_lasso(A, 2 * n * n)
        d = decide_F(A)
        assert (None if d.in_f else (d.witness.stem, d.witness.cycle)) == expected, A


def test_decide_agrees_with_brute_lasso_on_three_states():
    # a least witness has stem < n and cycle <= 2n, so words of length 3n suffice
    for A in automata(3):
        n = len(A.states)
        expected = brute_lasso(A, 3 * n)
        d = decide_F(A)
        assert (None if d.in_f else (d.witness.stem, d.witness.cycle)) == expected, A


def test_witness_prefixes_are_members():
    for A in automata(3):
        d = decide_F(A)
        if d.in_f:
            continue
        assert witness_valid(A, d.witness)
        beta = branch_prefix(d.witness, 4 * len(A.states))
        assert all(membership(A, beta[:j]) for j in range(len(beta) + 1))


def test_in_f_means_few_ones():
    # a 1 on a cycle would give infinitely many, so an n-state tree in F has < n ones per branch
    for A in automata(3):
        if decide_F(A).in_f:
            assert max(w.count("1") for w in accepted_words(A, 3 * len(A.states))) < len(A.states)


def test_branch_prefix_examples():
    assert branch_prefix(BranchWitness("", "1"), 3) == "111"
    assert branch_prefix(BranchWitness("0", "01"), 5) == "00101"
    assert branch_prefix(BranchWitness("0", "01"), 0) == ""


@given(st.text("01", max_size=5), st.text("01", max_size=4), st.integers(0, 30))
def test_branch_prefix_unrolls(stem, cyc, n):
    cyc += "1"
    w = branch_prefix(BranchWitness(stem, cyc), n)
    assert len(w) == n
    assert w == (stem + cyc * (n + 1))[:n]


def test_witness_cycle_needs_a_one():
    with pytest.raises(MalformedInput):
        BranchWitness("1", "00")


def test_enumeration():
    one = enumerate_automata(1)
    assert len(one) == 3
    assert {frozenset(b for _, b in A.delta) for A in one} == {frozenset({0}), frozenset({1}), frozenset({0, 1})}
    assert enumerate_automata(2) == enumerate_automata(2)
    assert all(validate_pruned(A) is None for A in automata(3))
    with pytest.raises(CorpusTooLarge):
        enumerate_automata(4)


def test_enumeration_is_up_to_renaming():
    def shape(A):
        # BFS order from the initial state is a renaming invariant for all-reachable automata
        order = [A.initial]
        for q in order:
            for b in (0, 1):
                t = A.step(q, b)
                if t is not None and t not in order:
                    order.append(t)
        pos = {q: i for i, q in enumerate(order)}
        return tuple(pos.get(A.step(q, b), -1) for q in order for b in (0, 1))

    corpus = automata(3)
    assert len({shape(A) for A in corpus}) == len(corpus)
