"""Node-count model for the reopening search on uniform synthetic trees.

Counts N(kind, d) for a tree of branching b with the root at depth 1:
recurrences, closed forms, a literal expansion of the generation rules,
and live counts from running the real engine on a synthetic tree.  All
arithmetic is plain Python int (closed forms overflow 64 bits well inside
the tested grid).
"""
from __future__ import annotations

import math
from typing import Dict, Tuple

from .games import SyntheticTree, TreeNode
from .kinds import NodeKind, child_kind
from .search import Engine, SearchStats

KINDS = (NodeKind.P, NodeKind.APRIME, NodeKind.PPRIME, NodeKind.C, NodeKind.A)

DepthKindCount = Dict[NodeKind, Dict[int, int]]


def count_recurrence(kind: NodeKind, d: int, b: int) -> int:
    if d < 1 or b < 2:
        raise ValueError("need d >= 1 and b >= 2")
    return _recurrence_table(d, b)[kind][d]


def _recurrence_table(depth: int, b: int) -> DepthKindCount:
    t = {k: {} for k in KINDS}
    t[NodeKind.P][1] = 1
    for k in KINDS[1:]:
        t[k][1] = 0
    for d in range(2, depth + 1):
        t[NodeKind.P][d] = 1
        t[NodeKind.APRIME][d] = (b - 1) * t[NodeKind.P][d - 1] + b * t[NodeKind.PPRIME][d - 1]
        t[NodeKind.PPRIME][d] = t[NodeKind.APRIME][d - 1]
        t[NodeKind.C][d] = (b - 1) * t[NodeKind.APRIME][d - 1] + b * t[NodeKind.A][d - 1]
        t[NodeKind.A][d] = t[NodeKind.C][d - 1]
    return t


def count_closed_form(kind: NodeKind, d: int, b: int) -> int:
    """General terms; the A form needs d >= 2 (base case below that)."""
    if d < 1 or b < 2:
        raise ValueError("need d >= 1 and b >= 2")
    c = lambda x: math.ceil(x / 2)
    if kind is NodeKind.P:
        return 1
    if kind is NodeKind.APRIME:
        return b ** c(d - 1) - 1
    if kind is NodeKind.PPRIME:
        return b ** c(d - 2) - 1 if d >= 2 else 0
    if kind is NodeKind.C:
        return c(d - 2) * b ** c(d) - c(d) * b ** c(d - 2) + 1 if d >= 2 else 0
    if kind is NodeKind.A:
        return c(d - 3) * b ** c(d - 1) - c(d - 1) * b ** c(d - 3) + 1 if d >= 2 else 0
    raise AssertionError(kind)


def closed_form_table(depth: int, b: int) -> DepthKindCount:
    return {k: {d: count_closed_form(k, d, b) for d in range(1, depth + 1)} for k in KINDS}


def simulate_structure(b: int, depth: int) -> DepthKindCount:
    """Expand the kind-generation rules literally, never consulting values.

    A C-node expands exactly one child (the beta-cutoff); every other kind
    expands all b children, the first as the most promising.
    """
    if b < 2 or depth < 1:
        raise ValueError("need b >= 2 and depth >= 1")
    counts = {k: {d: 0 for d in range(1, depth + 1)} for k in KINDS}
    frontier = {NodeKind.P: 1}
    for d in range(1, depth + 1):
        for k, n in frontier.items():
            counts[k][d] += n
        if d == depth:
            break
        nxt = {k: 0 for k in KINDS}
        for k, n in frontier.items():
            if k is NodeKind.C:
                nxt[child_kind(k, True)] += n
            else:
                nxt[child_kind(k, True)] += n
                nxt[child_kind(k, False)] += n * (b - 1)
        frontier = {k: n for k, n in nxt.items() if n}
    return counts


def synthetic_search_counts(b: int, depth: int) -> Tuple[DepthKindCount, SearchStats]:
    """Per-kind per-depth visit counts from running the engine live."""
    game = SyntheticTree(b, depth)
    stats = SearchStats()
    engine = Engine(game, ordering_fn=lambda node, moves: moves, tt=None, stats=stats)
    engine.search(TreeNode(()), -game.score_inf, game.score_inf, NodeKind.P)
    counts = {k: {d: 0 for d in range(1, depth + 1)} for k in KINDS}
    for (kind, d), n in stats.visits.items():
        counts[kind][d] += n
    return counts, stats


def total_nodes(b: int, depth: int) -> int:
    return sum(count_closed_form(k, d, b) for k in KINDS for d in range(1, depth + 1))


def growth_ratio(b: int, depth: int) -> float:
    """total_nodes over the D * b^ceil(D/2) envelope."""
    return total_nodes(b, depth) / (depth * b ** math.ceil(depth / 2))


def theory_table_tsv(b: int, depth: int) -> str:
    """TSV: kind, d, recurrence, closed_form, simulated, searched."""
    rec = _recurrence_table(depth, b)
    sim = simulate_structure(b, depth)
    live, _ = synthetic_search_counts(b, depth)
    lines = ["kind\td\trecurrence\tclosed_form\tsimulated\tsearched"]
    for k in KINDS:
        for d in range(1, depth + 1):
            lines.append(f"{k.value}\t{d}\t{rec[k][d]}\t{count_closed_form(k, d, b)}"
                         f"\t{sim[k][d]}\t{live[k][d]}")
    return "\n".join(lines) + "\n"
