"""JSON documents and DOT export.

All writers sort ids so that equal values serialise to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from lclkit.engine import SolveResult, Verdict
from lclkit.errors import MalformedInput
from lclkit.graph import (
    ANCHOR,
    ANCHOR_ROOT,
    AUXILIARY,
    PLAIN,
    UNLABELED,
    Coloring,
    EdgeKind,
    StructuredGraph,
    VertexKind,
    build_structured_graph,
    parent_child,
    tree_vertex,
)
from lclkit.regtree import FDecision

_SIMPLE_KINDS = {"anchor": ANCHOR, "plain": PLAIN, "aux": AUXILIARY}


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _vertex_json(v: str, kind: VertexKind) -> dict[str, Any]:
    out: dict[str, Any] = {"id": v, "kind": kind.tag}
    if kind.tag == "tree":
        out["tree"] = kind.tree_index
        out["root"] = kind.is_root
    return out


def _edge_json(a: str, b: str, kind: EdgeKind) -> dict[str, Any]:
    out: dict[str, Any] = {"a": a, "b": b, "kind": kind.tag}
    if kind.tag == "parent_child":
        out["parent"] = kind.parent
        out["side"] = kind.side.value
    return out


def graph_to_json(G: StructuredGraph) -> dict[str, Any]:
    return {
        "vertices": [_vertex_json(v, G.vertex_kind[v]) for v in G.vertices],
        "edges": [_edge_json(a, b, G.edge_kind[(a, b)]) for a, b in G.edges],
    }


def graph_from_json(doc: Mapping[str, Any], structured: bool = True) -> StructuredGraph:
    if not isinstance(doc, Mapping) or not isinstance(doc.get("vertices"), list):
        raise MalformedInput("graph document needs a 'vertices' list")
    ids: list[str] = []
    kinds: dict[str, VertexKind] = {}
    for entry in doc["vertices"]:
        try:
            v, tag = entry["id"], entry.get("kind", "plain")
        except (KeyError, TypeError, AttributeError):
            raise MalformedInput(f"bad vertex entry {entry!r}") from None
        if not isinstance(v, str):
            raise MalformedInput(f"vertex id must be a string, got {v!r}")
        if tag == "tree":
            idx, root = entry.get("tree", 0), entry.get("root", False)
            if idx not in (0, 1) or not isinstance(root, bool):
                raise MalformedInput(f"bad tree data on vertex {v!r}")
            kind = tree_vertex(idx, root)
        elif tag in _SIMPLE_KINDS:
            kind = _SIMPLE_KINDS[tag]
        else:
            raise MalformedInput(f"unknown vertex kind {tag!r}")
        ids.append(v)
        if v not in kinds:
            kinds[v] = kind
    edges: list[tuple[str, str]] = []
    ekinds: dict[tuple[str, str], EdgeKind] = {}
    for entry in doc.get("edges", []):
        try:
            a, b, tag = entry["a"], entry["b"], entry.get("kind", "unlabeled")
        except (KeyError, TypeError, AttributeError):
            raise MalformedInput(f"bad edge entry {entry!r}") from None
        if tag == "parent_child":
            if entry.get("side") not in ("left", "right"):
                raise MalformedInput(f"edge {a}-{b} needs side 'left' or 'right'")
            kind = parent_child(entry.get("parent"), entry["side"])
        elif tag == "anchor_root":
            kind = ANCHOR_ROOT
        elif tag == "unlabeled":
            kind = UNLABELED
        else:
            raise MalformedInput(f"unknown edge kind {tag!r}")
        edges.append((a, b))
        if (a, b) not in ekinds and (b, a) not in ekinds:
            ekinds[(a, b)] = kind
    return build_structured_graph(ids, kinds, edges, ekinds, structured=structured)


def coloring_to_json(f: Coloring) -> dict[str, Any]:
    return {"colors": f.support()}


def coloring_from_json(doc: Mapping[str, Any]) -> Coloring:
    if not isinstance(doc, Mapping) or not isinstance(doc.get("colors", {}), Mapping):
        raise MalformedInput("coloring document needs a 'colors' object")
    return Coloring(dict(doc.get("colors", {})))


def verdict_to_json(v: Verdict) -> dict[str, Any]:
    return {"ok": v.ok, "failures": list(v.failures)}


def decision_to_json(d: FDecision) -> dict[str, Any]:
    if d.in_f:
        return {"kind": "in_f"}
    return {"kind": "not_in_f", "stem": d.witness.stem, "cycle": d.witness.cycle}


def solve_to_json(r: SolveResult) -> dict[str, Any]:
    if not r.sat:
        return {"result": "unsat"}
    return {"result": "sat", "colors": r.coloring.support()}


_DOT_STYLE = {
    "anchor": 'shape=doublecircle, style=filled, fillcolor="#f4c542"',
    "tree": 'shape=circle, style=filled, fillcolor="#a7c7e7"',
    "plain": 'shape=circle, style=filled, fillcolor="#ffffff"',
    "aux": 'shape=point, width=0.12, color="#000000"',
}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(G: StructuredGraph, f: Coloring | None = None, name: str = "G") -> str:
    """Undirected DOT text; originals and auxiliaries are drawn differently and
    colors, when given, appear in the node labels."""
    lines = [f"graph {_quote(name)} {{"]
    for v in G.vertices:
        kind = G.vertex_kind[v]
        label = v if f is None else f"{v}\\nf={f[v]}"
        attrs = f"label={_quote(label)}, {_DOT_STYLE[kind.tag]}"
        if kind.tag == "aux" and f is not None:
            attrs = f"xlabel={_quote(str(f[v]))}, {_DOT_STYLE['aux']}"
        lines.append(f"  {_quote(v)} [{attrs}];")
    for a, b in G.edges:
        kind = G.edge_kind[(a, b)]
        if kind.tag == "parent_child":
            child = b if kind.parent == a else a
            lines.append(f"  {_quote(kind.parent)} -- {_quote(child)} [label={_quote(kind.side.value[0].upper())}];")
        elif kind.tag == "anchor_root":
            lines.append(f"  {_quote(a)} -- {_quote(b)} [style=bold];")
        else:
            lines.append(f"  {_quote(a)} -- {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
