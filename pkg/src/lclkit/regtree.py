"""Pruned binary trees presented by deterministic automata.

A tree is the prefix-closed set of bit strings on which the transition
function is defined from the initial state.  Membership in F (every branch
has finitely many 1s) is decided by a lasso search: the tree is outside F
exactly when some reachable state lies on a cycle that reads a 1.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Mapping

from lclkit.errors import CorpusTooLarge, MalformedInput, NotPrunedError, UnknownState
from lclkit.graph import (
    StructuredGraph,
    build_structured_graph,
    parent_child,
    tree_vertex,
)

MAX_ENUMERATED_STATES = 3


class TreeAutomaton:
    """Deterministic automaton over {0, 1}; ``delta`` maps (state, bit) to a state."""

    __slots__ = ("states", "initial", "delta")

    def __init__(self, states, initial: str, delta: Mapping[tuple[str, int], str]):
        self.states = tuple(states)
        self.initial = initial
        self.delta = MappingProxyType({(q, int(b)): t for (q, b), t in delta.items()})
        known = set(self.states)
        if len(known) != len(self.states):
            raise MalformedInput("duplicate state names")
        if initial not in known:
            raise UnknownState(f"initial state {initial!r} is not declared")
        for (q, b), t in self.delta.items():
            if q not in known or t not in known:
                raise UnknownState(f"transition {q!r} -{b}-> {t!r} uses an undeclared state")
            if b not in (0, 1):
                raise MalformedInput(f"bit must be 0 or 1, got {b!r}")

    def step(self, q: str, bit: int) -> str | None:
        return self.delta.get((q, bit))

    def run(self, s: str) -> str | None:
        q: str | None = self.initial
        for ch in s:
            q = self.delta.get((q, 1 if ch == "1" else 0)) if ch in "01" else None
            if q is None:
                return None
        return q

    def key(self) -> str:
        return json.dumps(automaton_to_json(self), sort_keys=True, separators=(",", ":"))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeAutomaton):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        moves = ", ".join(f"{q}-{b}->{t}" for (q, b), t in sorted(self.delta.items()))
        return f"TreeAutomaton(initial={self.initial}, {moves})"


@dataclass(frozen=True)
class NotPruned:
    state: str


@dataclass(frozen=True)
class BranchWitness:
    """The eventually periodic branch ``stem`` followed by ``cycle`` repeated forever."""

    stem: str
    cycle: str

    def __post_init__(self) -> None:
        if set(self.stem) - {"0", "1"} or set(self.cycle) - {"0", "1"}:
            raise MalformedInput("witness strings must be over {0,1}")
        if "1" not in self.cycle:
            raise MalformedInput("witness cycle must contain a 1")


@dataclass(frozen=True)
class FDecision:
    witness: BranchWitness | None = None

    @property
    def in_f(self) -> bool:
        return self.witness is None

    @property
    def kind(self) -> str:
        return "in_f" if self.in_f else "not_in_f"


def automaton_to_json(A: TreeAutomaton) -> dict[str, Any]:
    delta: dict[str, dict[str, str]] = {}
    for (q, b), t in sorted(A.delta.items()):
        delta.setdefault(q, {})[str(b)] = t
    return {"states": list(A.states), "initial": A.initial, "delta": delta}


def parse_automaton(obj: str | Mapping[str, Any], require_pruned: bool = True) -> TreeAutomaton:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"automaton is not valid JSON: {exc}") from None
    if not isinstance(obj, Mapping):
        raise MalformedInput("automaton must be a JSON object")
    try:
        states = obj["states"]
        initial = obj["initial"]
        raw = obj.get("delta", {})
    except KeyError as exc:
        raise MalformedInput(f"automaton is missing {exc.args[0]!r}") from None
    if not isinstance(states, list) or not all(isinstance(q, str) for q in states):
        raise MalformedInput("'states' must be a list of strings")
    if not isinstance(initial, str) or not isinstance(raw, Mapping):
        raise MalformedInput("'initial' must be a string and 'delta' an object")
    delta = {}
    for q, moves in raw.items():
        if q not in states:
            raise UnknownState(f"delta given for undeclared state {q!r}")
        if not isinstance(moves, Mapping):
            raise MalformedInput(f"delta[{q!r}] must be an object")
        for b, t in moves.items():
            if b not in ("0", "1"):
                raise MalformedInput(f"delta[{q!r}] has non-bit key {b!r}")
            if not isinstance(t, str):
                raise MalformedInput(f"delta[{q!r}][{b!r}] must be a state name")
            delta[(q, int(b))] = t
    A = TreeAutomaton(states, initial, delta)
    if require_pruned:
        bad = validate_pruned(A)
        if bad is not None:
            raise NotPrunedError(bad.state)
    return A


def reachable_states(A: TreeAutomaton) -> list[str]:
    seen = [A.initial]
    queue = deque([A.initial])
    while queue:
        q = queue.popleft()
        for b in (0, 1):
            t = A.step(q, b)
            if t is not None and t not in seen:
                seen.append(t)
                queue.append(t)
    return seen


def validate_pruned(A: TreeAutomaton) -> NotPruned | None:
    for q in reachable_states(A):
        if A.step(q, 0) is None and A.step(q, 1) is None:
            return NotPruned(q)
    return None


def membership(A: TreeAutomaton, s: str) -> bool:
    return A.run(s) is not None


def members(A: TreeAutomaton, d: int) -> list[str]:
    """All tree members of length at most ``d``, shortest first, lexicographic within a length."""
    out = []
    layer = [("", A.initial)]
    for depth in range(d + 1):
        out.extend(s for s, _ in layer)
        if depth == d:
            break
        nxt = []
        for s, q in layer:
            for b in (0, 1):
                t = A.step(q, b)
                if t is not None:
                    nxt.append((s + str(b), t))
        layer = nxt
    return out


def truncate(A: TreeAutomaton, d: int, tree_index: int = 0, prefix: str = "t/") -> StructuredGraph:
    """The depth-``d`` window of the tree as a rooted structured tree.

    Vertex ids are ``prefix + bits``; bit 0 is the left child, bit 1 the right.
    """
    if d < 0:
        raise MalformedInput("depth must be non-negative")
    ms = members(A, d)
    kinds = {prefix + s: tree_vertex(tree_index, s == "") for s in ms}
    edges = []
    ekinds = {}
    for s in ms:
        if s:
            par, child = prefix + s[:-1], prefix + s
            edges.append((par, child))
            ekinds[(par, child)] = parent_child(par, "left" if s[-1] == "0" else "right")
    return build_structured_graph(kinds, kinds, edges, ekinds)


def _lex_bfs(A: TreeAutomaton, start, targets_from):
    """Shortest, then lexicographically least, words over the product graph."""
    words = {start: ""}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for b in (0, 1):
            for nxt in targets_from(node, b):
                if nxt not in words:
                    words[nxt] = words[node] + str(b)
                    queue.append(nxt)
    return words


def decide_F(A: TreeAutomaton) -> FDecision:
    """Decide whether every branch of the tree has finitely many 1s.

    The witness minimises stem length, then cycle length, then the stem and
    the cycle lexicographically.
    """

    def plain(q, b):
        t = A.step(q, b)
        return () if t is None else (t,)

    def flagged(node, b):
        t = A.step(node[0], b)
        return () if t is None else ((t, node[1] or b == 1),)

    stems = _lex_bfs(A, A.initial, plain)
    best = None
    for q, stem in stems.items():
        cyc = _lex_bfs(A, (q, False), flagged).get((q, True))
        if cyc is None:
            continue
        key = (len(stem), len(cyc), stem, cyc)
        if best is None or key < best:
            best = key
    if best is None:
        return FDecision()
    return FDecision(BranchWitness(best[2], best[3]))


def witness_valid(A: TreeAutomaton, w: BranchWitness) -> bool:
    q = A.run(w.stem)
    if q is None:
        return False
    t = q
    for ch in w.cycle:
        t = A.step(t, int(ch))
        if t is None:
            return False
    return t == q


def branch_prefix(w: BranchWitness, n: int) -> str:
    if n <= len(w.stem):
        return w.stem[:n]
    rest = n - len(w.stem)
    reps = -(-rest // len(w.cycle))
    return w.stem + (w.cycle * reps)[:rest]


def _canonical_relabel(n: int, delta: dict[tuple[int, int], int]) -> tuple | None:
    """BFS renumbering from state 0; None when some state is unreachable."""
    order = [0]
    for q in order:
        for b in (0, 1):
            t = delta.get((q, b))
            if t is not None and t not in order:
                order.append(t)
    if len(order) != n:
        return None
    pos = {q: i for i, q in enumerate(order)}
    return tuple(
        pos[delta[(q, b)]] if (q, b) in delta else -1 for q in order for b in (0, 1)
    )


def enumerate_automata(max_states: int) -> list[TreeAutomaton]:
    """Every pruned automaton with at most ``max_states`` states, all reachable,
    one representative per state renaming, in a fixed order."""
    if max_states > MAX_ENUMERATED_STATES:
        raise CorpusTooLarge(f"enumeration is limited to {MAX_ENUMERATED_STATES} states")
    found: dict[tuple, TreeAutomaton] = {}
    for n in range(1, max_states + 1):
        slots = [(q, b) for q in range(n) for b in (0, 1)]
        for targets in itertools.product([None, *range(n)], repeat=len(slots)):
            delta = {s: t for s, t in zip(slots, targets) if t is not None}
            if any((q, 0) not in delta and (q, 1) not in delta for q in range(n)):
                continue
            canon = _canonical_relabel(n, delta)
            if canon is None or (n, canon) in found:
                continue
            moves = {}
            for i, t in enumerate(canon):
                if t >= 0:
                    moves[(f"q{i // 2}", i % 2)] = f"q{t}"
            found[(n, canon)] = TreeAutomaton([f"q{i}" for i in range(n)], "q0", moves)
    return [found[key] for key in sorted(found, key=lambda k: (k[0], found[k].key()))]
