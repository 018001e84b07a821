"""Shared test instances."""

from __future__ import annotations

import json
import random
from functools import lru_cache

from lclkit.engine import STRICT, lenient
from lclkit.graph import build_structured_graph, parent_child, tree_vertex
from lclkit.regtree import TreeAutomaton, enumerate_automata, parse_automaton, truncate
from lclkit.serialize import graph_to_json
from lclkit.sigma_pi import (
    ComponentSpec,
    build_component,
    pi_problem,
    proper_problem,
    sigma_problem,
    truncation_mode,
)

FULL = parse_automaton({"states": ["q"], "initial": "q", "delta": {"q": {"0": "q", "1": "q"}}})
ZERO = parse_automaton({"states": ["q"], "initial": "q", "delta": {"q": {"0": "q"}}})
ONE = parse_automaton({"states": ["q"], "initial": "q", "delta": {"q": {"1": "q"}}})
# one 1 at most on every branch
SINGLE_ONE = TreeAutomaton(
    ["q0", "q1"], "q0", {("q0", 0): "q0", ("q0", 1): "q1", ("q1", 0): "q1"}
)
# branch (01)^w
ALTERNATING = TreeAutomaton(["q0", "q1"], "q0", {("q0", 0): "q1", ("q1", 1): "q0"})


@lru_cache(maxsize=None)
def automata(max_states: int = 2) -> tuple[TreeAutomaton, ...]:
    return tuple(enumerate_automata(max_states))


def path_graph(n: int):
    ids = [f"v{i:02d}" for i in range(n)]
    return build_structured_graph(ids, edges=list(zip(ids, ids[1:])))


def solver_corpus(max_vertices: int = 12, max_palette: int = 4):
    """(label, graph, problem, mode, k) for every deduplicated corpus instance."""
    seen = set()
    out = []

    def add(label, G, P, mode, k):
        key = (json.dumps(graph_to_json(G), sort_keys=True), P.name, mode.kind, tuple(sorted(mode.checked)), k)
        if key in seen or len(G) > max_vertices:
            return
        seen.add(key)
        out.append((label, G, P, mode, k))

    for i, A in enumerate(automata(2)):
        for d in range(0, 12):
            T = truncate(A, d)
            if len(T) > max_vertices:
                break
            for k in range(1, max_palette + 1):
                add(f"sigma/a{i}/d{d}/lenient", T, sigma_problem(), truncation_mode(T, d), k)
                add(f"sigma/a{i}/d{d}/strict", T, sigma_problem(), STRICT, k)
    corpus = automata(2)
    for d in (0, 1, 2):
        for i, a0 in enumerate(corpus):
            for j, a1 in enumerate(corpus):
                G = build_component(ComponentSpec(a0, a1, d))
                if len(G) > max_vertices:
                    continue
                for k in range(1, max_palette + 1):
                    add(f"pi/{i}-{j}/d{d}/lenient", G, pi_problem(), truncation_mode(G, d), k)
                    add(f"pi/{i}-{j}/d{d}/strict", G, pi_problem(), STRICT, k)
    for n in range(1, max_vertices + 1):
        for k in range(1, max_palette + 1):
            add(f"proper/path{n}", path_graph(n), proper_problem(), STRICT, k)
    return out


def random_tree(rng: random.Random, n: int, labeled: bool = True):
    """Random rooted binary structured tree with ``n`` vertices (ids are shuffled numbers)."""
    ids = [f"n{v}" for v in rng.sample(range(1000), n)]
    kinds = {ids[0]: tree_vertex(0, True)}
    free = {ids[0]: ["left", "right"]}
    edges, ekinds = [], {}
    for v in ids[1:]:
        par = rng.choice([u for u, s in free.items() if s])
        side = free[par].pop(rng.randrange(len(free[par])))
        kinds[v] = tree_vertex(0, False)
        free[v] = ["left", "right"]
        edges.append((par, v))
        if labeled:
            ekinds[(par, v)] = parent_child(par, side)
    return build_structured_graph(ids, kinds, edges, ekinds)


def random_component(rng: random.Random, max_depth: int = 6, max_states: int = 2):
    corpus = automata(max_states)
    spec = ComponentSpec(rng.choice(corpus), rng.choice(corpus), rng.randint(0, max_depth))
    return spec, build_component(spec)


__all__ = [
    "FULL",
    "ZERO",
    "ONE",
    "SINGLE_ONE",
    "ALTERNATING",
    "automata",
    "path_graph",
    "solver_corpus",
    "random_tree",
    "random_component",
    "lenient",
]
