"""Brute-force ground truth and solution-database verification.

`solve_all` is a memoized full negamax over canonical keys -- independent
of the search engine -- used to check every exact value the solver emits.
`ai_reachable_set` computes the positions that can occur when one side is
a best-move-playing AI and the other may play anything.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

from . import board
from .board import Position, StatusKind
from .search import CapacityError, SolutionDatabase


@dataclass
class OracleDB:
    size: int
    values: dict = field(default_factory=dict)  # canonical key -> exact value
    root_key: Optional[tuple] = None

    def value_of(self, p: Position) -> int:
        return self.values[board.canonicalize(p)]


def solve_all(root: Position, max_positions: Optional[int] = None,
              reverse_moves: bool = False) -> OracleDB:
    """Exact negamax value of every position reachable from `root`.

    `reverse_moves` flips the child traversal order; values must be
    identical either way, which gives a cheap independence check.
    """
    sys.setrecursionlimit(100000)
    db = OracleDB(size=root.size, root_key=board.canonicalize(root))
    values = db.values

    def value(p: Position) -> int:
        key = board.canonicalize(p)
        got = values.get(key)
        if got is not None:
            return got
        status = board.move_status(p)
        if status.kind is StatusKind.TERMINAL:
            v = board.score_if_terminal(p)
        elif status.kind is StatusKind.MUST_PASS:
            v = -value(p.swap())
        else:
            moves = reversed(status.moves) if reverse_moves else status.moves
            v = max(-value(board.apply_move(p, m)) for m in moves)
        if max_positions is not None and len(values) >= max_positions:
            raise CapacityError(f"oracle budget {max_positions} positions exhausted")
        values[key] = v
        return v

    value(root)
    return db


@dataclass
class ReachabilityResult:
    keys: set                      # canonical keys of reachable decision points
    missing_best_move: list        # keys where the db had no designated move


def _normalize(p: Position, ai_to_move: bool):
    """Auto-pass through MustPass; returns (p, ai_to_move, terminal?)."""
    while True:
        status = board.move_status(p)
        if status.kind is StatusKind.TERMINAL:
            return p, ai_to_move, True, ()
        if status.kind is StatusKind.MUST_PASS:
            p = p.swap()
            ai_to_move = not ai_to_move
            continue
        return p, ai_to_move, False, status.moves


def ai_reachable_set(db: SolutionDatabase, root: Position, scenario: str = "union",
                     max_depth: Optional[int] = None) -> ReachabilityResult:
    """Closure of decision points under: human plays anything, AI plays the
    database's designated best move.  scenario: ai-first | ai-second | union.
    """
    if scenario not in ("ai-first", "ai-second", "union"):
        raise ValueError(f"unknown scenario {scenario!r}")
    starts = []
    if scenario in ("ai-first", "union"):
        starts.append(True)
    if scenario in ("ai-second", "union"):
        starts.append(False)

    keys: set = set()
    missing: list = []
    for ai_first in starts:
        seen = set()
        stack = [(root, ai_first, 0)]
        while stack:
            p, ai_now, depth = stack.pop()
            p, ai_now, terminal, moves = _normalize(p, ai_now)
            if terminal:
                continue
            key = board.canonicalize(p)
            if (key, ai_now) in seen:
                continue
            seen.add((key, ai_now))
            keys.add(key)
            if max_depth is not None and depth >= max_depth:
                continue
            if ai_now:
                best = db.best_move_for(p)
                if best is None:
                    missing.append(key)
                    continue
                stack.append((board.apply_move(p, best), False, depth + 1))
            else:
                for m in moves:
                    stack.append((board.apply_move(p, m), True, depth + 1))
    return ReachabilityResult(keys=keys, missing_best_move=missing)


@dataclass
class VerificationReport:
    coverage_violations: list = field(default_factory=list)   # reachable key absent
    value_violations: list = field(default_factory=list)      # (key, got, want)
    best_move_violations: list = field(default_factory=list)  # (key, move, child_value)
    missing_best_move: list = field(default_factory=list)
    checked_records: int = 0
    reachable_positions: int = 0

    @property
    def ok(self) -> bool:
        return not (self.coverage_violations or self.value_violations
                    or self.best_move_violations or self.missing_best_move)

    def to_tsv(self) -> str:
        """One line per violation; empty output means the check passed."""
        lines = []
        for key in self.coverage_violations:
            lines.append(f"coverage\t{key[0]:016x}\t{key[1]:016x}\t\t")
        for key, got, want in self.value_violations:
            lines.append(f"value\t{key[0]:016x}\t{key[1]:016x}\t{got}\t{want}")
        for key, move, child in self.best_move_violations:
            lines.append(f"best-move\t{key[0]:016x}\t{key[1]:016x}\t{move}\t{child}")
        for key in self.missing_best_move:
            lines.append(f"missing-best-move\t{key[0]:016x}\t{key[1]:016x}\t\t")
        return "\n".join(lines) + ("\n" if lines else "")


def verify_semi_strong(db: SolutionDatabase, oracle: OracleDB,
                       root: Position) -> VerificationReport:
    """Check coverage, value exactness and best-move attainment of `db`."""
    report = VerificationReport()
    size = db.size
    threshold = db.endgame_threshold
    nsq = size * size

    reach = ai_reachable_set(db, root, "union")
    report.missing_best_move = list(reach.missing_best_move)
    report.reachable_positions = len(reach.keys)
    for key in reach.keys:
        discs = (key[0] | key[1]).bit_count()
        if nsq - discs <= threshold:
            continue  # on-demand endgame territory by construction
        if key not in db.records:
            report.coverage_violations.append(key)

    for key, rec in db.records.items():
        report.checked_records += 1
        want = oracle.values.get(key)
        if want is None:
            p = Position(key[0], key[1], size)
            want = solve_all(p).values[board.canonicalize(p)]
        if rec.value != want:
            report.value_violations.append((key, rec.value, want))
            continue
        p = Position(key[0], key[1], size)
        status = board.move_status(p)
        if status.kind is not StatusKind.HAS_MOVES:
            continue
        if rec.best_move is None or rec.best_move not in status.moves:
            report.best_move_violations.append((key, rec.best_move, None))
            continue
        child = board.apply_move(p, rec.best_move)
        child_value = oracle.values.get(board.canonicalize(child))
        if child_value is None:
            child_value = solve_all(child).values[board.canonicalize(child)]
        if -child_value != rec.value:
            report.best_move_violations.append((key, rec.best_move, child_value))
    return report
