"""Finite structured graphs, radius-r balls and canonical ball types.

A structured graph carries a kind on every vertex (anchor, tree vertex,
plain, auxiliary) and on every edge (anchor-root, parent-child with a side,
unlabeled).  Ball types are canonical byte strings for rooted colored balls;
two balls get the same encoding exactly when a root-, kind-, side- and
color-preserving isomorphism exists between them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from lclkit.errors import (
    CycleDetected,
    DegreeExceeded,
    DuplicateEdge,
    DuplicateSide,
    DuplicateVertex,
    InvalidColoring,
    InvalidEdgeKind,
    NotATree,
    SelfLoop,
    UnknownEndpoint,
    UnknownVertex,
)

MAX_DEGREE = 3


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class VertexKind:
    tag: str  # "anchor" | "tree" | "plain" | "aux"
    tree_index: int | None = None
    is_root: bool = False

    def __post_init__(self) -> None:
        if self.tag not in ("anchor", "tree", "plain", "aux"):
            raise ValueError(f"unknown vertex kind {self.tag!r}")
        if self.tag == "tree":
            if self.tree_index not in (0, 1):
                raise ValueError("tree vertices need tree_index 0 or 1")
        elif self.tree_index is not None or self.is_root:
            raise ValueError(f"{self.tag} vertices carry no tree data")

    @property
    def code(self) -> str:
        if self.tag == "anchor":
            return "A"
        if self.tag == "plain":
            return "P"
        if self.tag == "aux":
            return "X"
        return f"T{self.tree_index}" + ("r" if self.is_root else "")


ANCHOR = VertexKind("anchor")
PLAIN = VertexKind("plain")
AUXILIARY = VertexKind("aux")


def tree_vertex(tree_index: int = 0, is_root: bool = False) -> VertexKind:
    return VertexKind("tree", tree_index, is_root)


@dataclass(frozen=True)
class EdgeKind:
    tag: str  # "anchor_root" | "parent_child" | "unlabeled"
    parent: str | None = None
    side: Side | None = None

    def __post_init__(self) -> None:
        if self.tag == "parent_child":
            if self.parent is None or self.side is None:
                raise InvalidEdgeKind("parent_child edges need a parent and a side")
            object.__setattr__(self, "side", Side(self.side))
        elif self.tag in ("anchor_root", "unlabeled"):
            if self.parent is not None or self.side is not None:
                raise InvalidEdgeKind(f"{self.tag} edges carry no parent/side")
        else:
            raise InvalidEdgeKind(f"unknown edge kind {self.tag!r}")


ANCHOR_ROOT = EdgeKind("anchor_root")
UNLABELED = EdgeKind("unlabeled")


def parent_child(parent: str, side: Side | str) -> EdgeKind:
    return EdgeKind("parent_child", parent, Side(side))


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def edge_tag(kind: EdgeKind, frm: str) -> str:
    """One-character tag for traversing an edge of ``kind`` starting at ``frm``."""
    if kind.tag == "anchor_root":
        return "="
    if kind.tag == "unlabeled":
        return "-"
    down = kind.parent == frm
    if kind.side is Side.LEFT:
        return "L" if down else "l"
    return "R" if down else "r"


class StructuredGraph:
    """Immutable finite graph with vertex and edge kinds.

    Use :func:`build_structured_graph` to construct a validated instance.
    """

    __slots__ = (
        "vertices", "vertex_kind", "edges", "edge_kind", "structured", "_adj", "_balls", "_codes", "_tags",
    )

    def __init__(
        self,
        vertices: tuple[str, ...],
        vertex_kind: Mapping[str, VertexKind],
        edges: tuple[tuple[str, str], ...],
        edge_kind: Mapping[tuple[str, str], EdgeKind],
        structured: bool,
    ):
        self.vertices = vertices
        self.vertex_kind = MappingProxyType(dict(vertex_kind))
        self.edges = edges
        self.edge_kind = MappingProxyType(dict(edge_kind))
        self.structured = structured
        adj: dict[str, list[str]] = {v: [] for v in vertices}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._balls: dict[tuple[str, int], frozenset[str]] = {}
        # lookup tables for encode_rooted, filled on first use
        self._codes: dict[str, str] | None = None
        self._tags: dict[tuple[str, str], str] | None = None

    def encoding_tables(self) -> tuple[dict[str, str], dict[tuple[str, str], str]]:
        """Kind code of every vertex and edge tag of every directed edge."""
        if self._codes is None:
            self._codes = {v: k.code for v, k in self.vertex_kind.items()}
            tags = {}
            for (a, b), kind in self.edge_kind.items():
                tags[(a, b)] = edge_tag(kind, a)
                tags[(b, a)] = edge_tag(kind, b)
            self._tags = tags
        return self._codes, self._tags

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructuredGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and dict(self.vertex_kind) == dict(other.vertex_kind)
            and dict(self.edge_kind) == dict(other.edge_kind)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"StructuredGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def neighbors(self, v: str) -> tuple[str, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def kind_of_edge(self, a: str, b: str) -> EdgeKind:
        return self.edge_kind[edge_key(a, b)]

    def children(self, v: str) -> dict[Side, str]:
        out = {}
        for u in self.neighbors(v):
            k = self.kind_of_edge(v, u)
            if k.tag == "parent_child" and k.parent == v:
                out[k.side] = u
        return out

    def parent(self, v: str) -> str | None:
        for u in self.neighbors(v):
            k = self.kind_of_edge(v, u)
            if k.tag == "parent_child" and k.parent == u:
                return u
        return None

    def ball_vertices(self, x: str, r: int) -> frozenset[str]:
        key = (x, r)
        hit = self._balls.get(key)
        if hit is None:
            hit = frozenset(bfs_distances(self, x, r))
            self._balls[key] = hit
        return hit

    def induced(self, keep: Iterable[str]) -> StructuredGraph:
        ks = set(keep)
        vs = tuple(v for v in self.vertices if v in ks)
        es = tuple(e for e in self.edges if e[0] in ks and e[1] in ks)
        return StructuredGraph(
            vs,
            {v: self.vertex_kind[v] for v in vs},
            es,
            {e: self.edge_kind[e] for e in es},
            self.structured,
        )


def bfs_distances(G: StructuredGraph, x: str, r: int | None = None) -> dict[str, int]:
    if x not in G:
        raise UnknownVertex(x)
    dist = {x: 0}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        if r is not None and dist[v] >= r:
            continue
        for u in G.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _has_cycle(vertices: Iterable[str], adj: Mapping[str, list[str]]) -> bool:
    seen: set[str] = set()
    for start in vertices:
        if start in seen:
            continue
        seen.add(start)
        stack = [(start, None)]
        while stack:
            v, par = stack.pop()
            for u in adj[v]:
                if u == par:
                    continue
                if u in seen:
                    return True
                seen.add(u)
                stack.append((u, v))
    return False


def build_structured_graph(
    vertices: Iterable[str],
    kinds: Mapping[str, VertexKind] | None = None,
    edges: Iterable[tuple[str, str]] = (),
    edge_kinds: Mapping[tuple[str, str], EdgeKind] | None = None,
    structured: bool = True,
) -> StructuredGraph:
    """Validate the pieces of a graph and assemble a :class:`StructuredGraph`.

    Vertices missing from ``kinds`` default to plain, edges missing from
    ``edge_kinds`` to unlabeled; ``edge_kinds`` may be keyed by either
    orientation of the pair.  With ``structured`` set, the degree bound and
    acyclicity are enforced as well.
    """
    kinds = kinds or {}
    edge_kinds = edge_kinds or {}
    vs: list[str] = []
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str):
            raise DuplicateVertex(f"vertex ids must be strings, got {v!r}")
        if v in seen:
            raise DuplicateVertex(v)
        seen.add(v)
        vs.append(v)
    for v in kinds:
        if v not in seen:
            raise UnknownEndpoint(f"kind given for undeclared vertex {v!r}")

    es: dict[tuple[str, str], EdgeKind] = {}
    ek = {edge_key(*k): val for k, val in edge_kinds.items()}
    adj: dict[str, list[str]] = {v: [] for v in vs}
    for a, b in edges:
        if a not in seen or b not in seen:
            raise UnknownEndpoint(f"edge {a!r}-{b!r} has an undeclared endpoint")
        if a == b:
            raise SelfLoop(a)
        key = edge_key(a, b)
        if key in es:
            raise DuplicateEdge(f"{a!r}-{b!r}")
        kind = ek.pop(key, UNLABELED)
        if kind.tag == "parent_child" and kind.parent not in key:
            raise InvalidEdgeKind(f"parent {kind.parent!r} is not an endpoint of {key}")
        es[key] = kind
        adj[a].append(b)
        adj[b].append(a)
    if ek:
        raise UnknownEndpoint(f"edge kinds given for absent edges {sorted(ek)}")

    taken: set[tuple[str, Side]] = set()
    for kind in es.values():
        if kind.tag == "parent_child":
            slot = (kind.parent, kind.side)
            if slot in taken:
                raise DuplicateSide(kind.parent)
            taken.add(slot)

    if structured:
        for v in vs:
            if len(adj[v]) > MAX_DEGREE:
                raise DegreeExceeded(f"{v!r} has degree {len(adj[v])}")
        if _has_cycle(vs, adj):
            raise CycleDetected("structured graphs must be acyclic")

    vs.sort()
    return StructuredGraph(
        tuple(vs),
        {v: kinds.get(v, PLAIN) for v in vs},
        tuple(sorted(es)),
        es,
        structured,
    )


@dataclass(frozen=True)
class Coloring:
    """Vertex colors; ids not present are colored 0."""

    colors: Mapping[str, int]

    def __post_init__(self) -> None:
        clean = {}
        for v, c in dict(self.colors).items():
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InvalidColoring(f"color of {v!r} must be a natural number, got {c!r}")
            clean[v] = c
        object.__setattr__(self, "colors", MappingProxyType(clean))

    def __getitem__(self, v: str) -> int:
        return self.colors.get(v, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.support() == other.support()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.support().items())))

    def support(self) -> dict[str, int]:
        """Nonzero entries, which determine the coloring."""
        return {v: c for v, c in sorted(self.colors.items()) if c != 0}

    def restrict(self, keep: Iterable[str]) -> Coloring:
        ks = set(keep)
        return Coloring({v: c for v, c in self.colors.items() if v in ks})

    def check_against(self, G: StructuredGraph) -> None:
        stray = [v for v in self.colors if v not in G]
        if stray:
            raise InvalidColoring(f"coloring mentions vertices not in the graph: {sorted(stray)[:5]}")


@dataclass(frozen=True)
class RootedBall:
    root: str
    graph: StructuredGraph
    colors: Coloring
    radius: int


class BallNode(NamedTuple):
    kind: str
    color: int
    children: tuple[tuple[str, "BallNode"], ...]


@dataclass(frozen=True)
class BallType:
    canonical_encoding: bytes
    radius: int

    @property
    def tree(self) -> BallNode:
        """The decoded canonical tree, rooted at the ball's center."""
        return parse_encoding(self.canonical_encoding)


def ball(G: StructuredGraph, f: Coloring, x: str, r: int) -> RootedBall:
    if x not in G:
        raise UnknownVertex(x)
    vs = G.ball_vertices(x, r)
    return RootedBall(x, G.induced(vs), f.restrict(vs), r)


def encode_rooted(
    G: StructuredGraph, color_of, root: str, within: frozenset[str] | None = None
) -> str:
    """Canonical string of the tree hanging from ``root`` inside ``within``.

    A vertex is written as ``(<kind>:<color><children>)`` where every child is
    prefixed by the edge tag seen from its parent and the children are sorted.
    """
    if within is None:
        within = frozenset(G.vertices)
    order: list[tuple[str, str | None]] = []
    parent_of: dict[str, str | None] = {root: None}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append((v, parent_of[v]))
        for u in G.neighbors(v):
            if u not in within or u == parent_of[v]:
                continue
            if u in parent_of:
                raise NotATree(f"cycle through {u!r} inside the ball of {root!r}")
            parent_of[u] = v
            stack.append(u)
    kind_code, tag = G.encoding_tables()
    codes: dict[str, list[str]] = {}
    out = ""
    for v, par in reversed(order):
        parts = codes.pop(v, [])
        parts.sort()
        s = f"({kind_code[v]}:{color_of(v)}{''.join(parts)})"
        if par is None:
            out = s
        else:
            codes.setdefault(par, []).append(tag[(par, v)] + s)
    return out


def ball_encoding(G: StructuredGraph, f: Coloring, x: str, r: int) -> bytes:
    """Encoding of ``ball(G, f, x, r)`` without materialising the subgraph."""
    return encode_rooted(G, f.__getitem__, x, G.ball_vertices(x, r)).encode("ascii")


def canonical_type(b: RootedBall) -> BallType:
    enc = encode_rooted(b.graph, b.colors.__getitem__, b.root)
    return BallType(enc.encode("ascii"), b.radius)


@lru_cache(maxsize=1 << 16)
def parse_encoding(enc: bytes) -> BallNode:
    s = enc.decode("ascii")
    pos = 0

    def node() -> BallNode:
        nonlocal pos
        if s[pos] != "(":
            raise ValueError(f"bad encoding at {pos}")
        colon = s.index(":", pos)
        kind = s[pos + 1 : colon]
        pos = colon + 1
        start = pos
        while s[pos].isdigit():
            pos += 1
        color = int(s[start:pos])
        kids = []
        while s[pos] != ")":
            tag = s[pos]
            pos += 1
            kids.append((tag, node()))
        pos += 1
        return BallNode(kind, color, tuple(kids))

    # balls in this package are shallow; recursion depth equals ball radius
    return node()


def tree_depths(G: StructuredGraph) -> dict[str, int]:
    """Depth of every tree vertex below the root of its own tree."""
    depths: dict[str, int] = {}
    for v in G.vertices:
        k = G.vertex_kind[v]
        if k.tag == "tree" and G.parent(v) is None:
            depths[v] = 0
            queue = deque([v])
            while queue:
                p = queue.popleft()
                for c in G.children(p).values():
                    depths[c] = depths[p] + 1
                    queue.append(c)
    return depths
