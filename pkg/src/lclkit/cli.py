"""Command-line entry point: ``lclkit <command> [flags]``.

Every command prints one JSON document (``export-dot`` prints DOT text).
Exit status is 0 whenever the command ran, whatever the mathematical
answer; 2 for malformed input or usage; 1 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from lclkit.engine import STRICT, CheckMode, LocalProblem, solve_finite_palette, verify
from lclkit.errors import LclError, MalformedInput, NotInImage, RootNotPositive, StuckInterior
from lclkit.gadgets import decode, encode, lift_problem
from lclkit.graph import Coloring, StructuredGraph
from lclkit.regtree import branch_prefix, decide_F, parse_automaton, truncate, validate_pruned
from lclkit.serialize import (
    coloring_from_json,
    coloring_to_json,
    decision_to_json,
    dumps,
    export_dot,
    graph_from_json,
    graph_to_json,
    solve_to_json,
    verdict_to_json,
)
from lclkit.sigma_pi import (
    build_component,
    component_colorable,
    extract_branch,
    parse_component_spec,
    pi_coloring_for_component,
    pi_problem,
    proper_problem,
    sigma_coloring_from_branch,
    sigma_problem,
    truncation_mode,
)

SCHEMA_HELP = """\
input documents:
  automaton  {"states": [q, ...], "initial": q, "delta": {q: {"0": q', "1": q''}}}
             (a missing bit means that child is absent)
  graph      {"vertices": [{"id": s, "kind": "anchor"|"tree"|"plain"|"aux",
                            "tree": 0|1, "root": bool}],
              "edges": [{"a": s, "b": s, "kind": "anchor_root"|"parent_child"|"unlabeled",
                         "parent": s, "side": "left"|"right"}]}
  coloring   {"colors": {id: n, ...}}   (omitted ids are colored 0)
  component  {"a0": automaton, "a1": automaton, "depth": d}

JSON Schemas for every input and output document ship in lclkit/schemas/.
"""

PROBLEMS: dict[str, Callable[[], LocalProblem]] = {
    "sigma": sigma_problem,
    "pi": pi_problem,
    "pi-star": lift_problem,
    "proper-k": proper_problem,
}


class UsageError(MalformedInput):
    pass


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from None


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _graph_input(args, problem: str | None = None) -> tuple[StructuredGraph, int | None]:
    """Graph for --in (automaton, component spec or graph) and the window depth."""
    doc = _read_json(args.inp)
    if isinstance(doc, dict) and "states" in doc:
        depth = _need(args.depth, "--depth")
        G = truncate(parse_automaton(doc), depth)
    elif isinstance(doc, dict) and "a0" in doc:
        spec = parse_component_spec(doc)
        depth = spec.depth if args.depth is None else args.depth
        G = build_component(type(spec)(spec.a0, spec.a1, depth))
    else:
        depth = args.depth
        G = graph_from_json(doc, structured=problem != "pi-star")
        return G, depth
    if problem == "pi-star":
        G = encode(G)
    return G, depth


def _mode(args, G: StructuredGraph, problem: str, depth: int | None) -> CheckMode:
    if args.mode == "strict":
        return STRICT
    depth = _need(depth, "--depth")
    base = decode(G) if problem == "pi-star" else G
    return truncation_mode(base, depth)


def _problem(args) -> tuple[str, LocalProblem]:
    name = _need(args.problem, "--problem")
    return name, PROBLEMS[name]()


def cmd_regtree_check(args):
    A = parse_automaton(_read_json(args.inp), require_pruned=False)
    bad = validate_pruned(A)
    return {"pruned": True} if bad is None else {"pruned": False, "state": bad.state}


def cmd_regtree_decide_f(args):
    return decision_to_json(decide_F(parse_automaton(_read_json(args.inp))))


def cmd_regtree_witness(args):
    A = parse_automaton(_read_json(args.inp))
    d = decide_F(A)
    out = decision_to_json(d)
    if not d.in_f:
        n = 4 * len(A.states) if args.depth is None else args.depth
        out["prefix"] = branch_prefix(d.witness, n)
    return out


def cmd_sigma_color(args):
    A = parse_automaton(_read_json(args.inp))
    d = decide_F(A)
    out = decision_to_json(d)
    if not d.in_f:
        f = sigma_coloring_from_branch(A, d.witness, _need(args.depth, "--depth"))
        out.update(coloring_to_json(f))
    return out


def _coloring(args) -> Coloring:
    if args.coloring is None:
        return Coloring({})
    return coloring_from_json(_read_json(args.coloring))


def cmd_extract_branch(args):
    G, _ = _graph_input(args)
    try:
        return {"branch": extract_branch(G, _coloring(args))}
    except RootNotPositive:
        return {"branch": None, "error": "root_not_positive"}
    except StuckInterior as exc:
        return {"branch": None, "error": "stuck_interior", "vertex": exc.vertex}


def cmd_lcl_verify(args):
    name, P = _problem(args)
    G, depth = _graph_input(args, name)
    f = _coloring(args)
    return verdict_to_json(verify(G, f, P, _mode(args, G, name, depth)))


def cmd_lcl_solve(args):
    name, P = _problem(args)
    G, depth = _graph_input(args, name)
    k = _need(args.palette, "--palette")
    mode = _mode(args, G, name, depth)
    if name == "pi-star":
        # pi-star ignores auxiliary colors, so its least solution is the least
        # Pi solution on the decoded graph with every auxiliary vertex at 0;
        # searching G* directly would enumerate the free auxiliary colors
        base = decode(G)
        if mode.kind == "lenient":
            mode = CheckMode("lenient", mode.checked & set(base.vertices))
        return solve_to_json(solve_finite_palette(base, pi_problem(), k, mode))
    return solve_to_json(solve_finite_palette(G, P, k, mode))


def cmd_component_build(args):
    G, _ = _graph_input(args)
    return graph_to_json(G)


def cmd_component_color(args):
    spec = parse_component_spec(_read_json(args.inp))
    if args.depth is not None:
        spec = type(spec)(spec.a0, spec.a1, args.depth)
    if not component_colorable(spec.a0, spec.a1):
        return {"colorable": False}
    return {"colorable": True, **coloring_to_json(pi_coloring_for_component(spec))}


def cmd_gadget_encode(args):
    G, _ = _graph_input(args)
    return graph_to_json(encode(G))


def cmd_gadget_decode(args):
    G = graph_from_json(_read_json(args.inp), structured=False)
    return graph_to_json(decode(G))


def cmd_export_dot(args):
    G = graph_from_json(_read_json(args.inp), structured=False)
    f = None if args.coloring is None else _coloring(args)
    return export_dot(G, f)


COMMANDS = {
    "regtree-check": (cmd_regtree_check, "report whether an automaton presents a pruned tree"),
    "regtree-decide-f": (cmd_regtree_decide_f, "decide whether all branches have finitely many 1s"),
    "regtree-witness": (cmd_regtree_witness, "lasso witness and its first --depth bits"),
    "sigma-color": (cmd_sigma_color, "Sigma-coloring of the depth window along the witness branch"),
    "extract-branch": (cmd_extract_branch, "follow favorite children from the root"),
    "lcl-verify": (cmd_lcl_verify, "check a coloring against a problem"),
    "lcl-solve": (cmd_lcl_solve, "exact search with palette {0..k-1}"),
    "component-build": (cmd_component_build, "anchor joined to two tree windows"),
    "component-color": (cmd_component_color, "Pi-coloring of a component, if one exists"),
    "gadget-encode": (cmd_gadget_encode, "replace every edge by its gadget"),
    "gadget-decode": (cmd_gadget_decode, "recover the structured graph from an encoding"),
    "export-dot": (cmd_export_dot, "Graphviz DOT text for a graph"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lclkit",
        description="Locally checkable coloring problems on structured trees.",
        epilog=SCHEMA_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(
            name, help=help_text, epilog=SCHEMA_HELP, formatter_class=argparse.RawDescriptionHelpFormatter
        )
        p.add_argument("--in", dest="inp", default="-", help="input document (default: stdin)")
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--depth", type=int, help="truncation depth / prefix length")
        p.add_argument("--palette", type=int, help="palette size k (colors 0..k-1)")
        p.add_argument("--mode", choices=("strict", "lenient"), default="strict")
        p.add_argument("--problem", choices=sorted(PROBLEMS))
        p.add_argument("--coloring", help="coloring document")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        result = handler(args)
    except (MalformedInput, NotInImage) as exc:
        print(f"lclkit: {exc}", file=sys.stderr)
        if isinstance(exc, UsageError):
            print(SCHEMA_HELP, file=sys.stderr)
        return 2
    except LclError as exc:
        print(f"lclkit: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"lclkit: internal error: {exc!r}", file=sys.stderr)
        return 1
    text = result if isinstance(result, str) else dumps(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
