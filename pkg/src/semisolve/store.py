"""Flat binary solution store: sorted records plus on-demand endgames.

Layout (little-endian):
  header, 16 bytes: magic "SSDB", version u16, board size u8,
                    endgame threshold u8, record count u64
  records, 24 bytes each, sorted ascending by (mover, opponent):
                    mover u64, opponent u64, value i16,
                    best_move u8 (255 = terminal/pass), kind flags u8
                    (bit0 P, bit1 A', bit2 P'), reserved u8, 3 pad bytes

Keys and best moves are stored in canonical orientation; `lookup`
canonicalizes the query and maps the move back through the inverse
symmetry.  Files are immutable; writers replace atomically via rename.
"""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import board
from .board import Position, StatusKind
from .search import SolutionDatabase, SolvedRecord

MAGIC = b"SSDB"
VERSION = 1
HEADER = struct.Struct("<4sHBBQ")
RECORD = struct.Struct("<QQhBBB3x")
NO_MOVE = 255


class StoreFormatError(ValueError):
    """Bad magic, version, ordering or truncation at open time."""


def write_store(path: str, db: SolutionDatabase) -> None:
    """Serialize `db`; rejects unsorted/duplicate input by construction."""
    items = sorted(db.records.items())
    for (a, b), (c, d) in zip(items, items[1:]):
        if a == c:
            raise ValueError(f"duplicate record key {a}")
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, db.size, db.endgame_threshold, len(items)))
        for (mover, opponent), rec in items:
            best = NO_MOVE if rec.best_move is None else rec.best_move
            fh.write(RECORD.pack(mover, opponent, rec.value, best, rec.flags, 0))
    os.replace(tmp, path)


def load_database(path: str) -> SolutionDatabase:
    """Read a store file back into an in-memory SolutionDatabase."""
    store = Store(path)
    db = SolutionDatabase(size=store.size, endgame_threshold=store.endgame_threshold,
                          complete=True)
    for j in range(store.count):
        best = int(store._best[j])
        db.records[(int(store._mover[j]), int(store._opp[j]))] = SolvedRecord(
            value=int(store._value[j]),
            best_move=None if best == NO_MOVE else best,
            flags=int(store._flags[j]),
        )
    return db


@dataclass
class LookupAnswer:
    status: str                    # covered | on-demand | not-covered | terminal
    value: Optional[int] = None    # mover perspective
    best_move: Optional[int] = None  # square in the query's own orientation
    record: Optional[SolvedRecord] = None


class Store:
    """Read-only view of a store file with binary-search lookup."""

    def __init__(self, path: str, ondemand_solver=None):
        with open(path, "rb") as fh:
            raw = fh.read()
        if len(raw) < HEADER.size:
            raise StoreFormatError("file shorter than the header")
        magic, version, size, threshold, count = HEADER.unpack_from(raw)
        if magic != MAGIC:
            raise StoreFormatError(f"bad magic {magic!r}")
        if version != VERSION:
            raise StoreFormatError(f"unsupported version {version}")
        if size not in (4, 6):
            raise StoreFormatError(f"bad board size {size}")
        body = raw[HEADER.size:]
        if len(body) != count * RECORD.size:
            raise StoreFormatError(f"count {count} does not match body length {len(body)}")
        self.path = path
        self.size = size
        self.endgame_threshold = threshold
        self.count = count
        arr = np.frombuffer(body, dtype=np.dtype([
            ("mover", "<u8"), ("opponent", "<u8"), ("value", "<i2"),
            ("best", "u1"), ("flags", "u1"), ("reserved", "u1"), ("pad", "V3"),
        ]))
        self._mover = arr["mover"]
        self._opp = arr["opponent"]
        self._value = arr["value"]
        self._best = arr["best"]
        self._flags = arr["flags"]
        if count > 1:
            m, o = self._mover, self._opp
            ok = (m[:-1] < m[1:]) | ((m[:-1] == m[1:]) & (o[:-1] < o[1:]))
            if not bool(ok.all()):
                raise StoreFormatError("records are not strictly sorted by key")
        self._ondemand = ondemand_solver

    def _find(self, mover: int, opponent: int) -> Optional[int]:
        lo = int(np.searchsorted(self._mover, np.uint64(mover), side="left"))
        hi = int(np.searchsorted(self._mover, np.uint64(mover), side="right"))
        if lo == hi:
            return None
        j = lo + int(np.searchsorted(self._opp[lo:hi], np.uint64(opponent), side="left"))
        if j < hi and int(self._opp[j]) == opponent:
            return j
        return None

    def get_record(self, key) -> Optional[SolvedRecord]:
        j = self._find(key[0], key[1])
        if j is None:
            return None
        best = int(self._best[j])
        return SolvedRecord(
            value=int(self._value[j]),
            best_move=None if best == NO_MOVE else best,
            flags=int(self._flags[j]),
        )

    def _solve_on_demand(self, p: Position):
        if self._ondemand is not None:
            return self._ondemand(p)
        if p.size == 6:
            from .fast import FastSolver6
            solver = self._fast = getattr(self, "_fast", None) or FastSolver6()
            return solver.solve(p.mover, p.opponent)
        from .search import make_engine, weak_solve
        engine = self._engine = getattr(self, "_engine", None) or make_engine(p.size)
        value, pv = weak_solve(p, engine)
        return value, (pv[0] if pv else None)

    def lookup(self, p: Position) -> LookupAnswer:
        if p.size != self.size:
            raise ValueError(f"store holds size {self.size}, query is size {p.size}")
        status = board.move_status(p)
        if status.kind is StatusKind.TERMINAL:
            return LookupAnswer("terminal", value=board.score_if_terminal(p))
        m, o, t = board.canonicalize_with_transform(p)
        rec = self.get_record((m, o))
        if rec is not None:
            best = rec.best_move
            if best is not None:
                best = board.inverse_transform_square(best, t, self.size)
            return LookupAnswer("covered", value=rec.value, best_move=best, record=rec)
        if p.empties <= self.endgame_threshold:
            value, best = self._solve_on_demand(p)
            return LookupAnswer("on-demand", value=value, best_move=best)
        return LookupAnswer("not-covered")

    def dump_tsv(self, limit: Optional[int] = None):
        """Yield TSV lines for auditing (mover, opponent, value, best, flags)."""
        yield "mover\topponent\tvalue\tbest_move\tflags"
        n = self.count if limit is None else min(limit, self.count)
        for j in range(n):
            best = int(self._best[j])
            best_text = board.move_to_text(None if best == NO_MOVE else best, self.size)
            yield (f"{int(self._mover[j]):016x}\t{int(self._opp[j]):016x}"
                   f"\t{int(self._value[j])}\t{best_text}\t{int(self._flags[j])}")
