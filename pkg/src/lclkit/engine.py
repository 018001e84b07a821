"""Local coloring problems, the coloring verifier and finite-palette solvers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from lclkit import kernels
from lclkit.errors import InstanceTooLarge, MalformedInput
from lclkit.graph import (
    BallType,
    Coloring,
    StructuredGraph,
    ball_encoding,
    encode_rooted,
)

DEFAULT_ORACLE_CAP = 10**7

Predicate = Callable[[BallType], bool]


@dataclass(frozen=True)
class LocalProblem:
    """A radius and a pass/fail predicate on canonical ball types.

    ``frontier_predicate`` is what a lenient check applies at vertices outside
    its checked set (``None`` means those vertices always pass).  Problems
    whose rules are also hard-coded in :mod:`lclkit.kernels` name their
    ``rule_family`` so the brute-force oracle can use the compiled kernel.
    """

    name: str
    radius: int
    predicate: Predicate = field(compare=False)
    frontier_predicate: Predicate | None = field(default=None, compare=False)
    rule_family: str | None = None

    def evaluate(self, bt: BallType, full: bool = True) -> bool:
        if full:
            return bool(self.predicate(bt))
        if self.frontier_predicate is None:
            return True
        return bool(self.frontier_predicate(bt))


@dataclass(frozen=True)
class CheckMode:
    kind: str = "strict"  # "strict" | "lenient"
    checked: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in ("strict", "lenient"):
            raise ValueError(f"unknown check mode {self.kind!r}")
        object.__setattr__(self, "checked", frozenset(self.checked))


STRICT = CheckMode("strict")


def lenient(checked: Iterable[str]) -> CheckMode:
    return CheckMode("lenient", frozenset(checked))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple[str, ...]


@dataclass(frozen=True)
class SolveResult:
    sat: bool
    coloring: Coloring | None = None
    # colorings enumerated by the brute-force oracle; None for the solver
    examined: int | None = None


# check levels per vertex
SKIP, FRONTIER, FULL = 0, 1, 2


def check_plan(G: StructuredGraph, P: LocalProblem, mode: CheckMode) -> dict[str, int]:
    if mode.kind == "strict":
        return {v: FULL for v in G.vertices}
    stray = mode.checked - set(G.vertices)
    if stray:
        raise MalformedInput(f"lenient checked set names unknown vertices {sorted(stray)[:5]}")
    rest = SKIP if P.frontier_predicate is None else FRONTIER
    return {v: FULL if v in mode.checked else rest for v in G.vertices}


def verify(
    G: StructuredGraph, f: Coloring, P: LocalProblem, mode: CheckMode = STRICT
) -> Verdict:
    f.check_against(G)
    cache: dict[tuple[bytes, int], bool] = {}
    failures = []
    for v, level in check_plan(G, P, mode).items():
        if level == SKIP:
            continue
        enc = ball_encoding(G, f, v, P.radius)
        key = (enc, level)
        ok = cache.get(key)
        if ok is None:
            ok = cache[key] = P.evaluate(BallType(enc, P.radius), level == FULL)
        if not ok:
            failures.append(v)
    return Verdict(not failures, tuple(failures))


def solve_finite_palette(
    G: StructuredGraph, P: LocalProblem, k: int, mode: CheckMode = STRICT
) -> SolveResult:
    """Exact search for a coloring with colors ``0..k-1``.

    Vertices are assigned in id order with ascending colors; after each
    assignment every vertex whose ball has just become fully colored is
    checked.  The first coloring found is the lexicographically least one.

    Exhausted positions are remembered as nogoods keyed by the colors of the
    earlier vertices that still share a pending check with later ones (the
    rest of the search depends on nothing else), so a subproblem that has
    failed once is never searched again.  This only skips subtrees known to
    fail and leaves the order of the search unchanged.
    """
    if k < 1:
        raise MalformedInput("palette size must be at least 1")
    order = list(G.vertices)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    # watch[i]: checks whose ball is complete once position i is colored
    watch: list[list[tuple[str, bool, tuple[int, ...], dict]]] = [[] for _ in range(n)]
    regions: list[list[int]] = []
    for v, level in check_plan(G, P, mode).items():
        if level == SKIP:
            continue
        region = sorted(pos[u] for u in G.ball_vertices(v, P.radius))
        # per-check memo from the colors of its ball to the outcome
        watch[region[-1]].append((v, level == FULL, tuple(region), {}))
        regions.append(region)
    # separator[i]: positions before i that appear in a check finishing at i or later
    separator: list[set[int]] = [set() for _ in range(n)]
    for region in regions:
        for i in range(region[0] + 1, region[-1] + 1):
            separator[i].update(p for p in region if p < i)
    sep = [sorted(s) for s in separator]
    nogoods: list[set[tuple[int, ...]]] = [set() for _ in range(n)]

    colors: dict[str, int] = {}
    assigned = [-1] * n
    by_type: dict[tuple[bytes, bool], bool] = {}

    def passes(v: str, full: bool, region: tuple[int, ...], memo: dict) -> bool:
        local = tuple(assigned[p] for p in region)
        ok = memo.get(local)
        if ok is None:
            enc = encode_rooted(G, colors.__getitem__, v, G.ball_vertices(v, P.radius)).encode("ascii")
            ok = by_type.get((enc, full))
            if ok is None:
                ok = by_type[(enc, full)] = P.evaluate(BallType(enc, P.radius), full)
            memo[local] = ok
        return ok

    i = 0
    while 0 <= i < n:
        v = order[i]
        c = assigned[i] + 1
        if c == 0 and tuple(assigned[p] for p in sep[i]) in nogoods[i]:
            c = k
        while c < k:
            colors[v] = c
            assigned[i] = c
            if all(passes(*check) for check in watch[i]):
                break
            c += 1
        if c < k:
            i += 1
        else:
            assigned[i] = -1
            nogoods[i].add(tuple(assigned[p] for p in sep[i]))
            colors.pop(v, None)
            i -= 1
    if i < 0:
        return SolveResult(False)
    return SolveResult(True, Coloring(colors))


def kernel_inputs(G: StructuredGraph, P: LocalProblem, mode: CheckMode) -> dict:
    """Flatten ``G`` into index arrays for :mod:`lclkit.kernels` (ids in sorted order)."""
    order = G.vertices
    n = len(order)
    idx = {v: i for i, v in enumerate(order)}
    width = max([G.degree(v) for v in order] + [1])
    left = np.full(n, -1, dtype=np.int32)
    right = np.full(n, -1, dtype=np.int32)
    nbr = np.full((n, width), -1, dtype=np.int32)
    flags = np.zeros(n, dtype=np.int8)
    levels = np.zeros(n, dtype=np.int8)
    plan = check_plan(G, P, mode)
    for v in order:
        i = idx[v]
        kids = G.children(v)
        for side, c in kids.items():
            (left if side.value == "left" else right)[i] = idx[c]
        for j, u in enumerate(G.neighbors(v)):
            nbr[i, j] = idx[u]
        kind = G.vertex_kind[v]
        if kind.is_root:
            flags[i] |= kernels.ROOT
        if kind.tag == "anchor":
            flags[i] |= kernels.ANCHOR
        levels[i] = plan[v]
    return dict(left=left, right=right, nbr=nbr, flags=flags, levels=levels)


def exhaustive_oracle(
    G: StructuredGraph,
    P: LocalProblem,
    k: int,
    mode: CheckMode = STRICT,
    cap: int = DEFAULT_ORACLE_CAP,
    backend: str | None = None,
) -> SolveResult:
    """Ground truth by enumerating all ``k**|V|`` colorings in id order.

    For problems with a known ``rule_family`` the rules are evaluated directly
    on the graph by the kernel (compiled when available); otherwise every
    coloring goes through :func:`verify`.
    """
    if k < 1:
        raise MalformedInput("palette size must be at least 1")
    n = len(G.vertices)
    total = k**n
    if total > cap:
        raise InstanceTooLarge(f"{k}^{n} = {total} colorings exceeds the cap {cap}")

    if P.rule_family in kernels.FAMILIES:
        arrays = kernel_inputs(G, P, mode)
        sol, examined = kernels.first_solution(
            kernels.FAMILIES[P.rule_family], k, backend=backend, **arrays
        )
        if sol is None:
            return SolveResult(False, examined=examined)
        colors = {v: int(c) for v, c in zip(G.vertices, sol)}
        return SolveResult(True, Coloring(colors), examined)

    examined = 0
    for combo in itertools.product(range(k), repeat=n):
        examined += 1
        f = Coloring(dict(zip(G.vertices, combo)))
        if verify(G, f, P, mode).ok:
            return SolveResult(True, f, examined)
    return SolveResult(False, examined=examined)


def from_table(
    name: str,
    radius: int,
    table: Mapping[bytes, bool],
    frontier_table: Mapping[bytes, bool] | None = None,
) -> LocalProblem:
    """Extensional problem: unknown ball types fail."""
    frontier = None
    if frontier_table is not None:
        frontier = lambda bt: frontier_table.get(bt.canonical_encoding, False)  # noqa: E731
    return LocalProblem(
        name,
        radius,
        lambda bt: table.get(bt.canonical_encoding, False),
        frontier,
    )


def tabulate(P: LocalProblem, G: StructuredGraph, k: int) -> tuple[dict[bytes, bool], dict[bytes, bool]]:
    """Pass tables of ``P`` over every ball type that occurs in ``G`` with palette ``k``."""
    full: dict[bytes, bool] = {}
    frontier: dict[bytes, bool] = {}
    for v in G.vertices:
        region = sorted(G.ball_vertices(v, P.radius))
        for combo in itertools.product(range(k), repeat=len(region)):
            colors = dict(zip(region, combo))
            enc = encode_rooted(G, colors.__getitem__, v, frozenset(region)).encode("ascii")
            if enc not in full:
                bt = BallType(enc, P.radius)
                full[enc] = P.evaluate(bt, True)
                frontier[enc] = P.evaluate(bt, False)
    return full, frontier
