"""The Sigma and Pi coloring problems and the constructions around them.

Sigma lives on a single rooted binary tree:

* the root gets a positive color;
* a vertex colored 1 has a right child with a positive color;
* a vertex colored c >= 2 has a left child colored exactly c - 1.

A tree has a Sigma-coloring exactly when it has a branch with infinitely many
1s.  Pi lives on a component made of an anchor joined to the roots of two
trees: the anchor must see exactly one positive root, and the two child
rules hold at every non-anchor vertex.

Finite windows of infinite trees are checked leniently: the child rules
only apply above the truncation depth, the root and anchor rules always.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from lclkit.engine import CheckMode, LocalProblem, lenient
from lclkit.errors import (
    MalformedInput,
    NoSubsequentOne,
    NotColorable,
    RootNotPositive,
    StuckInterior,
    WitnessInvalid,
)
from lclkit.graph import (
    ANCHOR,
    ANCHOR_ROOT,
    BallNode,
    BallType,
    Coloring,
    Side,
    StructuredGraph,
    build_structured_graph,
    tree_depths,
)
from lclkit.regtree import (
    BranchWitness,
    TreeAutomaton,
    automaton_to_json,
    branch_prefix,
    decide_F,
    parse_automaton,
    truncate,
    validate_pruned,
    witness_valid,
)

ANCHOR_ID = "anchor"


def tree_prefix(i: int) -> str:
    return f"t{i}/"


def _is_root(node: BallNode) -> bool:
    return node.kind.startswith("T") and node.kind.endswith("r")


def _child(node: BallNode, tag: str) -> BallNode | None:
    for t, c in node.children:
        if t == tag:
            return c
    return None


def child_rules_hold(node: BallNode) -> bool:
    c = node.color
    if c == 1:
        right = _child(node, "R")
        return right is not None and right.color >= 1
    if c >= 2:
        left = _child(node, "L")
        return left is not None and left.color == c - 1
    return True


def _sigma_root_rule(bt: BallType) -> bool:
    node = bt.tree
    return not (_is_root(node) and node.color < 1)


def _sigma(bt: BallType) -> bool:
    return _sigma_root_rule(bt) and child_rules_hold(bt.tree)


def anchor_rule_holds(node: BallNode) -> bool:
    return sum(1 for _, c in node.children if c.color >= 1) == 1


def _pi_anchor_only(bt: BallType) -> bool:
    node = bt.tree
    return node.kind != "A" or anchor_rule_holds(node)


def _pi(bt: BallType) -> bool:
    node = bt.tree
    if node.kind == "A":
        return anchor_rule_holds(node)
    return child_rules_hold(node)


def _proper(bt: BallType) -> bool:
    node = bt.tree
    return all(c.color != node.color for _, c in node.children)


def sigma_problem() -> LocalProblem:
    return LocalProblem("sigma", 1, _sigma, _sigma_root_rule, rule_family="sigma")


def pi_problem() -> LocalProblem:
    return LocalProblem("pi", 1, _pi, _pi_anchor_only, rule_family="pi")


def proper_problem() -> LocalProblem:
    """Proper coloring; the number of colors is the solver's palette."""
    return LocalProblem("proper-k", 1, _proper, rule_family="proper")


def truncation_mode(G: StructuredGraph, depth: int) -> CheckMode:
    """Lenient mode for a depth-``depth`` window: anchors and tree vertices above the frontier."""
    depths = tree_depths(G)
    checked = {v for v, dv in depths.items() if dv < depth}
    checked.update(v for v in G.vertices if G.vertex_kind[v].tag == "anchor")
    return lenient(checked)


def k_of(w: BranchWitness, s_len: int) -> int:
    """Number of 0s between position ``s_len`` of the branch and the next 1."""
    horizon = s_len + len(w.stem) + len(w.cycle) + 1
    bits = branch_prefix(w, horizon)
    nxt = bits.find("1", s_len)
    if nxt < 0:
        raise NoSubsequentOne(f"no 1 after position {s_len}")
    return nxt - s_len


def sigma_coloring_from_branch(
    A: TreeAutomaton, w: BranchWitness, d: int, prefix: str = "t/"
) -> Coloring:
    """Color the branch prefixes s of the depth-``d`` window by k(s) + 1, the rest by 0."""
    if not witness_valid(A, w):
        raise WitnessInvalid(f"{w} is not a branch of the tree")
    beta = branch_prefix(w, d)
    return Coloring({prefix + beta[:j]: k_of(w, j) + 1 for j in range(d + 1)})


def _single_root(T: StructuredGraph) -> str:
    roots = [v for v in T.vertices if T.vertex_kind[v].is_root]
    if len(roots) != 1:
        raise MalformedInput(f"expected exactly one root, found {len(roots)}")
    return roots[0]


def extract_branch(T: StructuredGraph, f: Coloring) -> str:
    """Follow favorite children from the root and return the bits read.

    The favorite child of a positive vertex is its right child when colored 1
    and its left child otherwise.  The walk stops at the truncation frontier.
    """
    v = _single_root(T)
    if f[v] < 1:
        raise RootNotPositive(v)
    bits = []
    while True:
        kids = T.children(v)
        if not kids:
            return "".join(bits)
        side = Side.RIGHT if f[v] == 1 else Side.LEFT
        nxt = kids.get(side)
        if nxt is None or f[nxt] < 1:
            raise StuckInterior(v)
        bits.append("1" if side is Side.RIGHT else "0")
        v = nxt


@dataclass(frozen=True)
class ComponentSpec:
    a0: TreeAutomaton
    a1: TreeAutomaton
    depth: int

    def __post_init__(self) -> None:
        for a in (self.a0, self.a1):
            bad = validate_pruned(a)
            if bad is not None:
                raise MalformedInput(f"component tree is not pruned at state {bad.state!r}")
        if self.depth < 0:
            raise MalformedInput("depth must be non-negative")

    def automaton(self, i: int) -> TreeAutomaton:
        return self.a0 if i == 0 else self.a1


def parse_component_spec(obj: Mapping[str, Any]) -> ComponentSpec:
    try:
        depth = obj["depth"]
        a0, a1 = parse_automaton(obj["a0"]), parse_automaton(obj["a1"])
    except KeyError as exc:
        raise MalformedInput(f"component spec is missing {exc.args[0]!r}") from None
    if isinstance(depth, bool) or not isinstance(depth, int):
        raise MalformedInput("'depth' must be an integer")
    return ComponentSpec(a0, a1, depth)


def component_spec_to_json(spec: ComponentSpec) -> dict[str, Any]:
    return {
        "a0": automaton_to_json(spec.a0),
        "a1": automaton_to_json(spec.a1),
        "depth": spec.depth,
    }


def build_component(spec: ComponentSpec) -> StructuredGraph:
    kinds = {ANCHOR_ID: ANCHOR}
    edges = []
    ekinds = {}
    for i in (0, 1):
        t = truncate(spec.automaton(i), spec.depth, i, tree_prefix(i))
        kinds.update(t.vertex_kind)
        edges.extend(t.edges)
        ekinds.update(t.edge_kind)
        root = tree_prefix(i)
        edges.append((ANCHOR_ID, root))
        ekinds[(ANCHOR_ID, root)] = ANCHOR_ROOT
    return build_structured_graph(kinds, kinds, edges, ekinds)


def component_colorable(a0: TreeAutomaton, a1: TreeAutomaton) -> bool:
    return not decide_F(a0).in_f or not decide_F(a1).in_f


def pi_coloring_for_component(spec: ComponentSpec) -> Coloring:
    """Sigma-color the first tree outside F along its witness branch; everything else is 0."""
    for i in (0, 1):
        A = spec.automaton(i)
        decision = decide_F(A)
        if not decision.in_f:
            return sigma_coloring_from_branch(A, decision.witness, spec.depth, tree_prefix(i))
    raise NotColorable("both trees have only branches with finitely many 1s")
