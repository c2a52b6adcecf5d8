"""Search-node taxonomy and transposition-table admissibility rules.

Five node kinds drive the reopening search: P (principal variation),
A' (AI to move after an opponent deviation), P' (human to move on the
AI's best line), C (cut / fail-high) and A (all / fail-low).  The first
three carry an exact-value-and-best-move obligation; C and A only ever
need a bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class NodeKind(Enum):
    P = "P"
    APRIME = "A'"
    PPRIME = "P'"
    C = "C"
    A = "A"

    @property
    def exact_obligation(self) -> bool:
        return self in (NodeKind.P, NodeKind.APRIME, NodeKind.PPRIME)


def child_kind(kind: NodeKind, is_most_promising_child: bool) -> NodeKind:
    """Kind of a child node given the parent's kind and child rank."""
    if kind is NodeKind.P:
        return NodeKind.P if is_most_promising_child else NodeKind.APRIME
    if kind is NodeKind.APRIME:
        return NodeKind.PPRIME if is_most_promising_child else NodeKind.C
    if kind is NodeKind.PPRIME:
        return NodeKind.APRIME
    if kind is NodeKind.C:
        return NodeKind.A
    if kind is NodeKind.A:
        return NodeKind.C
    raise AssertionError(kind)


# bit positions for the discharged-obligation bitset (matches the store format)
FLAG_P = 1
FLAG_APRIME = 2
FLAG_PPRIME = 4

_KIND_FLAG = {NodeKind.P: FLAG_P, NodeKind.APRIME: FLAG_APRIME, NodeKind.PPRIME: FLAG_PPRIME}


@dataclass
class KindFlags:
    """Cumulative record of what is known about one canonical position.

    `flags` is the discharged-obligation bitset; an exact value and a best
    move are present whenever any flag is set.  `lower`/`upper` carry
    fail-soft bounds from C/A searches.
    """

    flags: int = 0
    value: Optional[int] = None
    best_move: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None

    @property
    def has_exact(self) -> bool:
        return self.flags != 0

    def discharge(self, kind: NodeKind, value: int, best_move: Optional[int]) -> None:
        """Record an exact solve as `kind` (P/A'/P' only)."""
        bit = _KIND_FLAG[kind]
        # solving as P also discharges the A' and P' obligations
        if kind is NodeKind.P:
            bit |= FLAG_APRIME | FLAG_PPRIME
        self.flags |= bit
        self.value = value
        self.best_move = best_move
        self.lower = self.upper = None

    def add_bound(self, lower: Optional[int] = None, upper: Optional[int] = None) -> None:
        if self.has_exact:
            return
        if lower is not None and (self.lower is None or lower > self.lower):
            self.lower = lower
        if upper is not None and (self.upper is None or upper < self.upper):
            self.upper = upper


@dataclass
class TTProbe:
    """Outcome of an admissible table lookup."""

    value: int
    exact: bool
    best_move: Optional[int] = None


def tt_admissible(requested: NodeKind, flags: KindFlags,
                  alpha: Optional[int] = None, beta: Optional[int] = None) -> bool:
    """Whether a stored record lets the search for `requested` be omitted.

    For C/A requests a stored exact value always suffices; a stored bound
    suffices only when it answers the caller's window question, which is
    why alpha/beta are consulted there (and only there).
    """
    if requested is NodeKind.P:
        return bool(flags.flags & FLAG_P)
    if requested is NodeKind.APRIME:
        return bool(flags.flags & (FLAG_P | FLAG_APRIME))
    if requested is NodeKind.PPRIME:
        return bool(flags.flags & (FLAG_P | FLAG_PPRIME))
    # C or A
    if flags.has_exact:
        return True
    if flags.lower is not None and flags.lower == flags.upper:
        return True  # bounds meet: the value is pinned even without a kind flag
    if beta is not None and flags.lower is not None and flags.lower >= beta:
        return True
    if alpha is not None and flags.upper is not None and flags.upper <= alpha:
        return True
    return False


def tt_probe(requested: NodeKind, flags: KindFlags,
             alpha: Optional[int] = None, beta: Optional[int] = None) -> Optional[TTProbe]:
    """Value to use when tt_admissible holds, else None."""
    if not tt_admissible(requested, flags, alpha, beta):
        return None
    if flags.has_exact:
        return TTProbe(flags.value, True, flags.best_move)
    if flags.lower is not None and flags.lower == flags.upper:
        return TTProbe(flags.lower, True, flags.best_move)
    if beta is not None and flags.lower is not None and flags.lower >= beta:
        return TTProbe(flags.lower, False)
    return TTProbe(flags.upper, False)
