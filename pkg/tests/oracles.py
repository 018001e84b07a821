"""Independent brute-force references used by the tests.

None of these call into the code paths they check: distances come from
repeated edge relaxation, isomorphism from exhaustive bijection search,
lasso witnesses from enumerating accepted words.
"""

from __future__ import annotations

import itertools

from lclkit.graph import RootedBall, StructuredGraph
from lclkit.regtree import TreeAutomaton


def relaxed_distances(G: StructuredGraph, x: str) -> dict[str, int]:
    inf = len(G.vertices) + 1
    dist = {v: inf for v in G.vertices}
    dist[x] = 0
    changed = True
    while changed:
        changed = False
        for a, b in G.edges:
            for u, v in ((a, b), (b, a)):
                if dist[u] + 1 < dist[v]:
                    dist[v] = dist[u] + 1
                    changed = True
    return {v: d for v, d in dist.items() if d < inf}


def _edge_sig(G: StructuredGraph, a: str, b: str, phi: dict[str, str]):
    k = G.kind_of_edge(a, b)
    parent = None if k.parent is None else phi.get(k.parent, ("?", k.parent))
    return (k.tag, parent, k.side)


def isomorphic(b1: RootedBall, b2: RootedBall) -> bool:
    """Search all root-preserving bijections respecting kinds, colors, edges and sides."""
    G1, G2 = b1.graph, b2.graph
    if len(G1) != len(G2) or len(G1.edges) != len(G2.edges):
        return False
    rest1 = [v for v in G1.vertices if v != b1.root]
    rest2 = [v for v in G2.vertices if v != b2.root]

    def compatible(u, v):
        return (
            G1.vertex_kind[u] == G2.vertex_kind[v]
            and b1.colors[u] == b2.colors[v]
            and G1.degree(u) == G2.degree(v)
        )

    if not compatible(b1.root, b2.root):
        return False
    phi = {b1.root: b2.root}
    used = {b2.root}

    def extend(i: int) -> bool:
        if i == len(rest1):
            for a, b in G1.edges:
                fa, fb = phi[a], phi[b]
                if fb not in G2.neighbors(fa):
                    return False
                k1, k2 = G1.kind_of_edge(a, b), G2.kind_of_edge(fa, fb)
                if k1.tag != k2.tag or k1.side != k2.side:
                    return False
                if k1.parent is not None and phi[k1.parent] != k2.parent:
                    return False
            return True
        u = rest1[i]
        for v in rest2:
            if v in used or not compatible(u, v):
                continue
            phi[u] = v
            used.add(v)
            if extend(i + 1):
                return True
            del phi[u]
            used.discard(v)
        return False

    return extend(0)


def accepted_words(A: TreeAutomaton, max_len: int) -> list[str]:
    words = []
    for n in range(max_len + 1):
        for bits in itertools.product("01", repeat=n):
            w = "".join(bits)
            q = A.initial
            for ch in w:
                q = A.delta.get((q, int(ch)))
                if q is None:
                    break
            if q is not None:
                words.append(w)
    return words


def brute_lasso(A: TreeAutomaton, max_len: int):
    """Least (|u|, |v|, u, v) over accepted words uv with equal states after u and uv, v containing a 1."""
    best = None
    stack = [("", [A.initial])]
    while stack:
        w, trail = stack.pop()
        for cut in range(len(w)):
            u, v = w[:cut], w[cut:]
            if trail[cut] == trail[-1] and "1" in v:
                key = (len(u), len(v), u, v)
                if best is None or key < best:
                    best = key
        if len(w) < max_len:
            for ch in "01":
                q = A.delta.get((trail[-1], int(ch)))
                if q is not None:
                    stack.append((w + ch, trail + [q]))
    return None if best is None else (best[2], best[3])
