"""Reopening principal-variation search and the plain PVS weak solver.

One engine implements both: entering any P or A' node reopens the window
to (-inf, +inf) so its exact value and best move get established; forcing
the root kind to C degenerates to ordinary fail-soft PVS, which is what
`weak_solve` does.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import board
from .board import Position, StatusKind
from .games import OthelloGame
from .kinds import KindFlags, NodeKind, child_kind, tt_probe


class CapacityError(RuntimeError):
    """A resource budget (table or key-set storage) was exhausted."""


@dataclass(frozen=True)
class Ordering:
    """Move-ordering policy.

    heuristic: fewest resulting opponent mobility first, then square index.
    oracle-optimal: true-value-best child first (needs `values`, a mapping
    from canonical key to exact value from the mover's perspective).
    natural: input order (synthetic trees are pre-ordered optimally).
    """

    mode: str = "heuristic"
    values: Optional[dict] = None

    def __post_init__(self):
        if self.mode not in ("heuristic", "oracle-optimal", "natural"):
            raise ValueError(f"unknown ordering mode {self.mode!r}")
        if self.mode == "oracle-optimal" and self.values is None:
            raise ValueError("oracle-optimal ordering needs a value source")


def order_moves(p: Position, moves, ordering: Ordering):
    """Deterministic permutation of `moves` per the ordering policy."""
    if ordering.mode == "natural" or len(moves) <= 1:
        return list(moves)
    g = board.geometry(p.size)
    if ordering.mode == "heuristic":
        def sort_key(m):
            child = board.apply_move(p, m)
            mobility = bin(board.legal_move_mask(child.mover, child.opponent, g)).count("1")
            return (mobility, m)
    else:
        values = ordering.values
        def sort_key(m):
            child = board.apply_move(p, m)
            return (values[board.canonicalize(child)], m)
    return sorted(moves, key=sort_key)


class TranspositionTable:
    """Canonical key -> KindFlags, bounded with FIFO replacement."""

    def __init__(self, capacity: Optional[int] = None):
        self.capacity = capacity
        self._table: dict = {}
        self.hits = 0
        self.stores = 0

    def __len__(self):
        return len(self._table)

    def get(self, key) -> Optional[KindFlags]:
        return self._table.get(key)

    def entry(self, key) -> KindFlags:
        rec = self._table.get(key)
        if rec is None:
            if self.capacity is not None and len(self._table) >= self.capacity:
                self._table.pop(next(iter(self._table)))
            rec = self._table[key] = KindFlags()
            self.stores += 1
        return rec


@dataclass
class SearchStats:
    """Visit/expansion counters; optional census of expanded canonical keys."""

    visits: Counter = field(default_factory=Counter)      # (kind, level) -> n
    expansions: Counter = field(default_factory=Counter)  # (kind, level) -> n
    researches: int = 0
    tt_cutoffs: int = 0
    census: Optional[dict] = None          # level -> set of canonical keys
    census_tt_hits: bool = False           # also count TT-omitted nodes
    census_limit: Optional[int] = None     # cap on total census keys

    def enable_census(self, include_tt_hits: bool = False, limit: Optional[int] = None):
        self.census = {}
        self.census_tt_hits = include_tt_hits
        self.census_limit = limit

    def census_add(self, level, key):
        if self.census is None:
            return
        bucket = self.census.setdefault(level, set())
        if key not in bucket:
            if self.census_limit is not None and self.total_census_keys() >= self.census_limit:
                raise CapacityError(f"census key budget {self.census_limit} exhausted")
            bucket.add(key)

    def total_census_keys(self) -> int:
        return sum(len(s) for s in (self.census or {}).values())

    def visits_by_kind_depth(self):
        return dict(self.visits)


@dataclass(frozen=True)
class SolvedRecord:
    value: int
    best_move: Optional[int]  # square in canonical orientation; None = pass/terminal
    flags: int


@dataclass
class SolutionDatabase:
    """In-memory P/A'/P' record set produced by semi_strong_solve."""

    size: int
    endgame_threshold: int
    records: dict = field(default_factory=dict)  # canonical key -> SolvedRecord
    root_value: Optional[int] = None
    complete: bool = False

    def lookup(self, p: Position) -> Optional[SolvedRecord]:
        return self.records.get(board.canonicalize(p))

    def best_move_for(self, p: Position) -> Optional[int]:
        """Designated best move mapped back to p's orientation."""
        m, o, t = board.canonicalize_with_transform(p)
        rec = self.records.get((m, o))
        if rec is None or rec.best_move is None:
            return None
        return board.inverse_transform_square(rec.best_move, t, self.size)


class Engine:
    """Algorithm driver over a game adapter.

    trace, when set, is called once per finalized exact record with
    (key, kind, value, best_move_canonical).
    """

    def __init__(self, game, ordering_fn: Callable, tt: Optional[TranspositionTable] = None,
                 stats: Optional[SearchStats] = None, db: Optional[SolutionDatabase] = None,
                 endgame_threshold: int = 0, trace: Optional[Callable] = None):
        self.game = game
        self.order = ordering_fn
        self.tt = tt
        self.stats = stats or SearchStats()
        self.db = db
        self.endgame_threshold = endgame_threshold
        self.trace = trace
        self.inf = game.score_inf

    # --- helpers -----------------------------------------------------------

    def _canonical_record(self, node, move):
        m, o, t = board.canonicalize_with_transform(node)
        cmove = None if move is None else board.transform_square(move, t, node.size)
        return (m, o), cmove

    def _node_key(self, node):
        return self.game.key(node)

    # --- the search --------------------------------------------------------

    def search(self, node, alpha: int, beta: int, kind: NodeKind) -> int:
        stats = self.stats
        level = self.game.level(node)
        stats.visits[(kind, level)] += 1
        status, moves = self.game.status(node)

        if status is StatusKind.TERMINAL:
            return self.game.terminal_score(node)

        if kind is NodeKind.P or kind is NodeKind.APRIME:
            alpha, beta = -self.inf, self.inf

        if status is StatusKind.MUST_PASS:
            # sole, most-promising child: keeps kind alternation intact
            child = self.game.apply_pass(node)
            return -self.search(child, -beta, -alpha, child_kind(kind, True))

        orig_alpha, orig_beta = alpha, beta
        key = self._node_key(node)
        rec = self.tt.get(key) if (self.tt is not None and key is not None) else None
        if rec is not None:
            probe = tt_probe(kind, rec, alpha, beta)
            if probe is not None:
                stats.tt_cutoffs += 1
                if stats.census_tt_hits:
                    stats.census_add(level, key)
                return probe.value

        stats.expansions[(kind, level)] += 1
        if key is not None:
            stats.census_add(level, key)

        best = -self.inf
        best_move = None
        for i, m in enumerate(self.order(node, moves)):
            child = self.game.apply(node, m)
            if i == 0:
                score = -self.search(child, -beta, -alpha, child_kind(kind, True))
            else:
                score = -self.search(child, -alpha - 1, -alpha, child_kind(kind, False))
                if alpha < score < beta:
                    stats.researches += 1
                    alpha = score
                    ck = child_kind(kind, True)
                    if ck.exact_obligation:
                        # the promoted child owes an exact value; give it the
                        # full window its contract presumes
                        score = -self.search(child, -self.inf, self.inf, ck)
                    else:
                        score = -self.search(child, -beta, -alpha, ck)
            if score > best:
                best, best_move = score, m
            alpha = max(alpha, score)
            if alpha >= beta:
                break

        self._finalize(node, key, kind, best, best_move, orig_alpha, orig_beta)
        return best

    def _finalize(self, node, key, kind, best, best_move, orig_alpha, orig_beta):
        if key is None:
            return
        canon_move = None
        if best_move is not None:
            _, canon_move = self._canonical_record(node, best_move)
        if kind.exact_obligation:
            if self.tt is not None:
                self.tt.entry(key).discharge(kind, best, canon_move)
            if self.db is not None and self._should_record(node):
                old = self.db.records.get(key)
                flags = (old.flags if old else 0) | _kind_bit(kind)
                self.db.records[key] = SolvedRecord(best, canon_move, flags)
            if self.trace is not None:
                self.trace(key, kind, best, canon_move)
        elif self.tt is not None:
            rec = self.tt.entry(key)
            if best <= orig_alpha:
                rec.add_bound(upper=best)
            elif best >= orig_beta:
                rec.add_bound(lower=best)
            else:
                rec.add_bound(lower=best, upper=best)
            if not rec.has_exact and canon_move is not None and best > orig_alpha:
                rec.best_move = canon_move

    def _should_record(self, node) -> bool:
        return getattr(node, "empties", None) is None or node.empties > self.endgame_threshold


def _kind_bit(kind: NodeKind) -> int:
    from .kinds import FLAG_APRIME, FLAG_P, FLAG_PPRIME
    if kind is NodeKind.P:
        return FLAG_P
    if kind is NodeKind.APRIME:
        return FLAG_APRIME
    return FLAG_PPRIME


# --- public entry points ----------------------------------------------------


def make_engine(size: int, ordering: Optional[Ordering] = None,
                tt_capacity: Optional[int] = None, stats: Optional[SearchStats] = None,
                db: Optional[SolutionDatabase] = None, endgame_threshold: int = 0,
                trace: Optional[Callable] = None, use_tt: bool = True) -> Engine:
    game = OthelloGame(size)
    ordering = ordering or Ordering()
    order_fn = lambda node, moves: order_moves(node, moves, ordering)
    tt = TranspositionTable(tt_capacity) if use_tt else None
    return Engine(game, order_fn, tt=tt, stats=stats, db=db,
                  endgame_threshold=endgame_threshold, trace=trace)


def reopening_search(p: Position, engine: Optional[Engine] = None,
                     kind: NodeKind = NodeKind.P,
                     alpha: Optional[int] = None, beta: Optional[int] = None) -> int:
    """Search `p` as `kind`; P/A'/P' calls return the exact value."""
    engine = engine or make_engine(p.size)
    inf = engine.inf
    return engine.search(p, -inf if alpha is None else alpha,
                         inf if beta is None else beta, kind)


def weak_solve(p: Position, engine: Optional[Engine] = None,
               with_pv: bool = True):
    """Exact value of p via plain fail-soft PVS; returns (value, pv moves)."""
    engine = engine or make_engine(p.size)
    value = engine.search(p, -engine.inf, engine.inf, NodeKind.C)
    pv = extract_pv(engine, p, value) if with_pv else []
    return value, pv


def extract_pv(engine: Engine, node, value: int):
    """Re-derive a principal variation realizing `value` (warm-table cheap)."""
    pv = []
    game = engine.game
    while True:
        status, moves = game.status(node)
        if status is StatusKind.TERMINAL:
            break
        if status is StatusKind.MUST_PASS:
            pv.append(None)
            node = game.apply_pass(node)
            value = -value
            continue
        for m in engine.order(node, moves):
            child = game.apply(node, m)
            if -engine.search(child, -engine.inf, engine.inf, NodeKind.C) == value:
                pv.append(m)
                node = child
                value = -value
                break
        else:
            raise AssertionError("no move realizes the solved value")
    return pv


def semi_strong_solve(root: Position, ordering: Optional[Ordering] = None,
                      endgame_threshold: int = 0, tt_capacity: Optional[int] = None,
                      stats: Optional[SearchStats] = None,
                      trace: Optional[Callable] = None) -> SolutionDatabase:
    """Solve `root` with the reopening search, collecting P/A'/P' records."""
    db = SolutionDatabase(size=root.size, endgame_threshold=endgame_threshold)
    engine = make_engine(root.size, ordering=ordering, tt_capacity=tt_capacity,
                         stats=stats, db=db, endgame_threshold=endgame_threshold,
                         trace=trace)
    db.root_value = engine.search(root, -engine.inf, engine.inf, NodeKind.P)
    db.complete = True
    return db
