"""Game adapters the search engine runs on.

The engine only needs: a status/move list, move application, pass
application, terminal scores, a transposition key (None disables the
table for that node) and a depth metric for statistics.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import board
from .board import Position, StatusKind


class OthelloGame:
    """Adapter over the bitboard rules engine; keys are canonical pairs."""

    def __init__(self, size: int):
        self.size = size
        self.score_inf = size * size + 1  # +/- infinity sentinel

    def status(self, p: Position):
        s = board.move_status(p)
        return s.kind, s.moves

    def apply(self, p: Position, move: int) -> Position:
        return board.apply_move(p, move)

    def apply_pass(self, p: Position) -> Position:
        return p.swap()

    def terminal_score(self, p: Position) -> int:
        return board.score_if_terminal(p)

    def key(self, p: Position):
        return board.canonicalize(p)

    def level(self, p: Position) -> int:
        return p.discs


@dataclass(frozen=True)
class TreeNode:
    path: tuple  # child indices chosen from the root, each in [0, b)


class SyntheticTree:
    """Uniform game tree of branching b and depth D with optimal ordering.

    Child 0 is strictly best at every internal node and all leaf values are
    distinct.  Leaf values are mixed-radix sums with ply weights b**(D-i),
    signed so the mover at each ply strictly prefers lower child indices;
    the weight of a ply dominates everything below it, which makes the
    natural child order optimal by construction.  There are no
    transpositions (keys are the paths themselves) and no passes.
    """

    def __init__(self, b: int, depth: int):
        if b < 2 or depth < 1:
            raise ValueError("need branching >= 2 and depth >= 1")
        self.b = b
        self.depth = depth
        self.score_inf = b ** depth * depth + 1

    def status(self, node: TreeNode):
        if len(node.path) == self.depth - 1:
            return StatusKind.TERMINAL, ()
        return StatusKind.HAS_MOVES, tuple(range(self.b))

    def apply(self, node: TreeNode, move: int) -> TreeNode:
        return TreeNode(node.path + (move,))

    def apply_pass(self, node: TreeNode) -> TreeNode:
        raise AssertionError("synthetic trees have no passes")

    def terminal_score(self, node: TreeNode) -> int:
        # root-perspective value; mover at ply i prefers digit 0
        v = 0
        for i, digit in enumerate(node.path, start=1):
            sign = -1 if i % 2 == 1 else 1
            v += sign * digit * self.b ** (self.depth - i)
        # convert to the leaf mover's perspective (negamax convention)
        return v if len(node.path) % 2 == 0 else -v

    def key(self, node: TreeNode):
        return None  # no transpositions by construction; disable the table

    def level(self, node: TreeNode) -> int:
        return len(node.path) + 1  # root is depth 1
