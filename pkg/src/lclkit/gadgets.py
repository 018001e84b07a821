"""Erasing structure with edge gadgets, and recovering it again.

Every edge xy of a structured graph becomes a path x-p1-p2-p3-p4-y with a
pendant path of 2 vertices at p4 and a pendant path at p1 whose length
records the edge: 3 for an anchor edge (x the anchor), 4 when y is the left
child of x, 5 when y is the right child.  The result is a plain acyclic
graph of maximum degree 3 from which the structure is recovered through
vertex orders: a vertex has order k when a path of length k leaves it,
runs through degree-2 vertices and ends at a leaf.
"""

from __future__ import annotations

from collections import deque

from lclkit.engine import LocalProblem
from lclkit.errors import GraphError, NotInImage, NotStructured
from lclkit.graph import (
    ANCHOR,
    ANCHOR_ROOT,
    AUXILIARY,
    PLAIN,
    UNLABELED,
    BallNode,
    BallType,
    EdgeKind,
    Side,
    StructuredGraph,
    build_structured_graph,
    parent_child,
    tree_vertex,
)

ANCHOR_PENDANT = 3
PENDANT_SIDE = {4: Side.LEFT, 5: Side.RIGHT}
SIDE_PENDANT = {Side.LEFT: 4, Side.RIGHT: 5}
CHILD_PENDANT = 2
HOP = 5  # originals adjacent in G are this far apart in G*

# radius of the lifted problem; see lift_problem
STAR_RADIUS = 7


def aux_id(x: str, y: str, tag: str) -> str:
    return f"{x}|{y}|{tag}"


def _orient(G: StructuredGraph, a: str, b: str) -> tuple[str, str, int]:
    """(head, tail, pendant length) for the gadget replacing edge ab."""
    kind = G.kind_of_edge(a, b)
    if kind.tag == "anchor_root":
        anchors = [v for v in (a, b) if G.vertex_kind[v].tag == "anchor"]
        if len(anchors) != 1:
            raise NotStructured(f"anchor edge {a}-{b} needs exactly one anchor endpoint")
        head = anchors[0]
        return head, (b if head == a else a), ANCHOR_PENDANT
    if kind.tag == "parent_child":
        head = kind.parent
        return head, (b if head == a else a), SIDE_PENDANT[kind.side]
    raise NotStructured(f"edge {a}-{b} is unlabeled")


def encode(G: StructuredGraph) -> StructuredGraph:
    """Replace every edge of ``G`` by its gadget.

    Original vertices keep their ids and become plain; auxiliary ids are
    ``head|tail|tag`` with tags p1..p4 on the main path, a1.. on the p1
    pendant and b1, b2 on the p4 pendant.
    """
    if not G.structured:
        raise NotStructured("input must be a validated structured graph")
    for v in G.vertices:
        if G.vertex_kind[v].tag not in ("anchor", "tree"):
            raise NotStructured(f"vertex {v!r} is neither an anchor nor a tree vertex")
    kinds = {v: PLAIN for v in G.vertices}
    edges: list[tuple[str, str]] = []
    for a, b in G.edges:
        head, tail, length = _orient(G, a, b)
        main = [aux_id(head, tail, f"p{i}") for i in range(1, 5)]
        near = [aux_id(head, tail, f"a{i}") for i in range(1, length + 1)]
        far = [aux_id(head, tail, f"b{i}") for i in range(1, CHILD_PENDANT + 1)]
        for v in main + near + far:
            kinds[v] = AUXILIARY
        path = [head, *main, tail]
        edges.extend(zip(path, path[1:]))
        for chain in ([main[0], *near], [main[-1], *far]):
            edges.extend(zip(chain, chain[1:]))
    try:
        return build_structured_graph(kinds, kinds, edges)
    except GraphError as exc:
        raise NotStructured(f"gadget encoding failed: {exc}") from None


def _walk_orders(degree, neighbors, x: str, limit: int) -> dict[int, tuple[str, ...]]:
    found: dict[int, tuple[str, ...]] = {}
    for first in neighbors(x):
        path = [x, first]
        prev, cur = x, first
        while len(path) <= limit + 1:
            d = degree(cur)
            if d == 1:
                found.setdefault(len(path) - 1, tuple(path))
                break
            if d != 2:
                break
            nxt = next(u for u in neighbors(cur) if u != prev)
            if nxt == x:
                break
            prev, cur = cur, nxt
            path.append(cur)
    return found


def order_witnesses(Gstar: StructuredGraph, x: str) -> dict[int, tuple[str, ...]]:
    """For each order of ``x``, one path certifying it (starting at ``x``)."""
    return _walk_orders(Gstar.degree, Gstar.neighbors, x, len(Gstar))


def vertex_orders(Gstar: StructuredGraph) -> dict[str, frozenset[int]]:
    return {v: frozenset(order_witnesses(Gstar, v)) for v in Gstar.vertices}


def originals_of(Gstar: StructuredGraph) -> list[str]:
    """Vertices all of whose neighbors have degree 3."""
    return [v for v in Gstar.vertices if all(Gstar.degree(u) == 3 for u in Gstar.neighbors(v))]


def _paths_to_originals(Gstar: StructuredGraph, x: str, originals: set[str]) -> dict[str, list[str]]:
    """Paths of length HOP from ``x`` to originals, through auxiliary vertices only."""
    out = {}
    parent = {x: None}
    queue = deque([(x, 0)])
    while queue:
        v, dist = queue.popleft()
        if dist == HOP:
            continue
        for u in Gstar.neighbors(v):
            if u in parent:
                continue
            parent[u] = v
            if u in originals:
                if dist + 1 == HOP:
                    path = [u]
                    while path[-1] != x:
                        path.append(parent[path[-1]])
                    out[u] = path[::-1]
                continue
            queue.append((u, dist + 1))
    return out


def _gadget_vertices(Gstar: StructuredGraph, start: str, originals: set[str]) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in Gstar.neighbors(v):
            if u not in originals and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def decode(Gstar: StructuredGraph) -> StructuredGraph:
    """Recover the structured graph whose gadget encoding is ``Gstar``.

    Tree indices are not carried by the gadgets; the roots hanging from an
    anchor are numbered 0, 1 in id order and every tree inherits its root's
    index.
    """
    if len(Gstar) == 0:
        return build_structured_graph([])
    originals = originals_of(Gstar)
    if not originals:
        raise NotInImage(None, "no vertex has all neighbors of degree 3")
    orig = set(originals)
    orders = vertex_orders(Gstar)
    anchors = {x for x in originals if any(3 in orders[u] for u in Gstar.neighbors(x))}

    edges: dict[tuple[str, str], EdgeKind] = {}
    covered: set[str] = set()
    for x in originals:
        for y, path in _paths_to_originals(Gstar, x, orig).items():
            if y < x:
                continue
            u, z = path[1], path[-2]
            head_x = orders[u] & {3, 4, 5}
            head_y = orders[z] & {3, 4, 5}
            if len(head_x) + len(head_y) != 1:
                raise NotInImage(x, f"cannot orient the link to {y!r}")
            if head_x:
                head, tail, near, far, (length,) = x, y, u, z, tuple(head_x)
            else:
                head, tail, near, far, (length,) = y, x, z, u, tuple(head_y)
            if CHILD_PENDANT not in orders[far]:
                raise NotInImage(tail, f"gadget towards {head!r} lacks the order-2 pendant")
            body = _gadget_vertices(Gstar, near, orig)
            if len(body) != 4 + length + CHILD_PENDANT or body & covered:
                raise NotInImage(head, f"malformed gadget towards {tail!r}")
            expected = set(path[1:-1])
            expected.update(order_witnesses(Gstar, near)[length][1:])
            expected.update(order_witnesses(Gstar, far)[CHILD_PENDANT][1:])
            if body != expected:
                raise NotInImage(head, f"malformed gadget towards {tail!r}")
            covered |= body
            if length == ANCHOR_PENDANT:
                kind = ANCHOR_ROOT
            else:
                kind = parent_child(head, PENDANT_SIDE[length])
            edges[(x, y)] = kind
    stray = set(Gstar.vertices) - orig - covered
    if stray:
        raise NotInImage(min(stray), "auxiliary vertex outside every gadget")

    adj: dict[str, list[str]] = {x: [] for x in originals}
    has_parent = set()
    for (a, b), kind in edges.items():
        adj[a].append(b)
        adj[b].append(a)
        if kind.tag == "parent_child":
            has_parent.add(b if kind.parent == a else a)
    index: dict[str, int] = {}
    for a in sorted(anchors):
        roots = sorted(u for u in adj[a] if u not in anchors)
        if len(roots) > 2:
            raise NotInImage(a, "anchor with more than two trees")
        for i, r in enumerate(roots):
            index[r] = i
    kinds = {}
    queue = deque(sorted(v for v in originals if v not in anchors and v not in has_parent))
    for r in queue:
        index.setdefault(r, 0)
    while queue:
        v = queue.popleft()
        kinds[v] = tree_vertex(index[v], v not in has_parent)
        for u in adj[v]:
            k = edges.get((v, u)) or edges.get((u, v))
            if k.tag == "parent_child" and k.parent == v and u not in kinds:
                index[u] = index[v]
                queue.append(u)
    for a in anchors:
        kinds[a] = ANCHOR
    missing = set(originals) - set(kinds)
    if missing:
        raise NotInImage(min(missing), "tree vertex not reachable from a root")
    try:
        return build_structured_graph(originals, kinds, list(edges), edges)
    except GraphError as exc:
        raise NotInImage(None, str(exc)) from None


class _BallView:
    """Index-based view of a decoded ball tree rooted at its center."""

    def __init__(self, root: BallNode, radius: int):
        self.radius = radius
        self.color: list[int] = []
        self.depth: list[int] = []
        self.adj: list[list[int]] = []
        self.kids: list[list[int]] = []
        queue = deque([(root, -1)])
        while queue:
            node, par = queue.popleft()
            i = len(self.color)
            self.color.append(node.color)
            self.depth.append(0 if par < 0 else self.depth[par] + 1)
            self.adj.append([] if par < 0 else [par])
            self.kids.append([])
            if par >= 0:
                self.adj[par].append(i)
                self.kids[par].append(i)
            for _, child in node.children:
                queue.append((child, i))

    def degree(self, i: int) -> int:
        # exact only below the boundary of the ball
        return len(self.adj[i]) if self.depth[i] < self.radius else -1

    def neighbors(self, i: int) -> list[int]:
        return self.adj[i]

    def is_original(self, i: int) -> bool:
        return all(self.degree(u) == 3 for u in self.adj[i])

    def orders(self, i: int) -> set[int]:
        return set(_walk_orders(self.degree, self.neighbors, i, 2 * self.radius))

    def descendants_at(self, i: int, depth: int) -> list[int]:
        layer = [i]
        while layer and self.depth[layer[0]] < depth:
            layer = [c for v in layer for c in self.kids[v]]
        return layer


def _links(view: _BallView) -> list[tuple[set[int], int]] | None:
    """(orders of the gadget neighbor, G-neighbor) for each edge at the center."""
    out = []
    for u in view.kids[0]:
        ys = [y for y in view.descendants_at(u, HOP) if view.is_original(y)]
        if len(ys) != 1:
            return None
        out.append((view.orders(u), ys[0]))
    return out


def _pi_star(bt: BallType) -> bool:
    view = _BallView(bt.tree, bt.radius)
    if not view.is_original(0):
        return True
    links = _links(view)
    if links is None:
        return False
    if any(3 in o for o, _ in links):
        return sum(1 for _, y in links if view.color[y] >= 1) == 1
    c = view.color[0]
    kids = {PENDANT_SIDE[k]: y for o, y in links for k in o & {4, 5}}
    if c == 1:
        y = kids.get(Side.RIGHT)
        return y is not None and view.color[y] >= 1
    if c >= 2:
        y = kids.get(Side.LEFT)
        return y is not None and view.color[y] == c - 1
    return True


def lift_problem() -> LocalProblem:
    """The anchor/child rules read off the bare graph structure of a gadget encoding.

    Vertex kinds in the ball are ignored.  Auxiliary vertices always pass.
    At an original vertex the ball must show its gadget neighbors' orders
    and, five steps out, the original vertices it is linked to; telling such
    a vertex apart from the order-2 pendant next to it needs the degrees of
    its own neighbors, hence radius 7.

    Lenient checks skip unchecked vertices entirely, so the anchors must be
    in the checked set (as they are for truncation windows).
    """
    return LocalProblem("pi-star", STAR_RADIUS, _pi_star)


def erase_kinds(G: StructuredGraph) -> StructuredGraph:
    """Same graph with every vertex auxiliary and every edge unlabeled."""
    return build_structured_graph(
        G.vertices, {v: AUXILIARY for v in G.vertices}, G.edges, {e: UNLABELED for e in G.edges},
        structured=G.structured,
    )


__all__ = [
    "encode",
    "decode",
    "vertex_orders",
    "order_witnesses",
    "originals_of",
    "lift_problem",
    "erase_kinds",
    "STAR_RADIUS",
]
