"""Locally checkable coloring problems on structured trees."""

from lclkit.engine import (
    STRICT,
    CheckMode,
    LocalProblem,
    SolveResult,
    Verdict,
    exhaustive_oracle,
    lenient,
    solve_finite_palette,
    verify,
)
from lclkit.gadgets import decode, encode, lift_problem, vertex_orders
from lclkit.graph import (
    BallType,
    Coloring,
    RootedBall,
    StructuredGraph,
    ball,
    build_structured_graph,
    canonical_type,
)
from lclkit.regtree import (
    BranchWitness,
    FDecision,
    TreeAutomaton,
    branch_prefix,
    decide_F,
    enumerate_automata,
    membership,
    parse_automaton,
    truncate,
    validate_pruned,
)
from lclkit.sigma_pi import (
    ComponentSpec,
    build_component,
    component_colorable,
    extract_branch,
    k_of,
    pi_coloring_for_component,
    pi_problem,
    proper_problem,
    sigma_coloring_from_branch,
    sigma_problem,
    truncation_mode,
)

__version__ = "0.1.0"
