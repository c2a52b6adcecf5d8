"""Census of unique visited/reachable positions per disc count.

Three columns: positions expanded by the plain alpha-beta weak solver,
by the reopening solver, and the full reachable enumeration.  Only
positions where the side to move has a legal move are counted; must-pass
positions are passed through and their successor counted instead.

The exhaustive column is a level-synchronous breadth-first enumeration
over canonical keys, vectorized with numpy; levels are chunked, with
optional sorted-run spill to disk between chunks.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import board
from .board import Position
from .kinds import NodeKind
from .search import CapacityError, Ordering, SearchStats, make_engine

COLUMNS = ("alphabeta", "reopening", "exhaustive")


@dataclass
class CensusTable:
    size: int
    columns: dict = field(default_factory=dict)  # name -> {discs: count}

    def rows(self):
        return range(4, self.size * self.size + 1)

    def total(self, column: str) -> int:
        return sum(self.columns.get(column, {}).values())

    def to_tsv(self) -> str:
        lines = ["discs\t" + "\t".join(COLUMNS)]
        for d in self.rows():
            cells = [str(self.columns[c][d]) if d in self.columns.get(c, {}) else "-"
                     for c in COLUMNS]
            if all(c == "-" for c in cells):
                continue
            lines.append(f"{d}\t" + "\t".join(cells))
        totals = [str(self.total(c)) if self.columns.get(c) else "-" for c in COLUMNS]
        lines.append("total\t" + "\t".join(totals))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str, size: int) -> "CensusTable":
        lines = [l for l in text.strip().splitlines() if l]
        names = lines[0].split("\t")[1:]
        table = cls(size=size)
        for line in lines[1:]:
            cells = line.split("\t")
            if cells[0] == "total":
                continue
            d = int(cells[0])
            for name, cell in zip(names, cells[1:]):
                if cell != "-":
                    table.columns.setdefault(name, {})[d] = int(cell)
        return table


def merge_tables(size: int, **columns) -> CensusTable:
    t = CensusTable(size=size)
    for name, col in columns.items():
        if col is not None:
            t.columns[name] = dict(col)
    return t


# --- search census -----------------------------------------------------------


def census_search(algorithm: str, root: Position, ordering: Optional[Ordering] = None,
                  include_tt_hits: bool = False, key_limit: Optional[int] = None,
                  endgame_threshold: int = 0) -> dict:
    """Unique expanded canonical positions per disc count for one solver run."""
    if algorithm not in ("alphabeta", "reopening"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    stats = SearchStats()
    stats.enable_census(include_tt_hits=include_tt_hits, limit=key_limit)
    engine = make_engine(root.size, ordering=ordering, stats=stats,
                         endgame_threshold=endgame_threshold)
    kind = NodeKind.P if algorithm == "reopening" else NodeKind.C
    engine.search(root, -engine.inf, engine.inf, kind)
    return {discs: len(keys) for discs, keys in sorted(stats.census.items())}


# --- exhaustive enumeration --------------------------------------------------


def _legal_mask_vec(me, opp, g):
    empty = np.uint64(g.full) & ~(me | opp)
    moves = np.zeros_like(me)
    for d, mask in g.dirs:
        x = g.shift(me, d) & mask & opp
        for _ in range(g.size - 2):
            nxt = g.shift(x, d) & mask
            moves |= nxt & empty
            x = nxt & opp
    return moves


def _flips_vec(me, opp, sq: int, g):
    """Vectorized flip mask for one fixed square over position arrays."""
    flips = np.zeros_like(me)
    one = np.uint64(1)
    for d, mask in g.dirs:
        # squares along the ray from sq, precomputed scalar-side
        ray = []
        cur = 1 << sq
        while True:
            cur = g.shift(cur, d) & mask
            if not cur:
                break
            ray.append(cur.bit_length() - 1)
        if not ray:
            continue
        run = np.zeros_like(me)
        alive = np.ones(me.shape, dtype=bool)
        valid = np.zeros(me.shape, dtype=bool)
        for s in ray:
            s64 = np.uint64(s)
            on_opp = ((opp >> s64) & one).astype(bool) & alive
            on_me = ((me >> s64) & one).astype(bool) & alive
            valid |= on_me
            run = np.where(on_opp, run | (one << s64), run)
            alive = on_opp
            if not alive.any():
                break
        flips |= np.where(valid, run, np.uint64(0))
    return flips


def _canonical_vec(m, o, g):
    tm, to = g.transpose(m), g.transpose(o)
    best_m, best_o = m.copy(), o.copy()
    for t in range(8):
        cm, co = (tm, to) if t >= 4 else (m, o)
        if t & 1:
            cm, co = g.mirror_horizontal(cm), g.mirror_horizontal(co)
        if t & 2:
            cm, co = g.flip_vertical(cm), g.flip_vertical(co)
        better = (cm < best_m) | ((cm == best_m) & (co < best_o))
        best_m = np.where(better, cm, best_m)
        best_o = np.where(better, co, best_o)
    return best_m, best_o


def _unique_pairs(m, o):
    idx = np.lexsort((o, m))
    m, o = m[idx], o[idx]
    if len(m) == 0:
        return m, o
    keep = np.empty(len(m), dtype=bool)
    keep[0] = True
    keep[1:] = (m[1:] != m[:-1]) | (o[1:] != o[:-1])
    return m[keep], o[keep]


def _expand_chunk(me, opp, g):
    """Children of one frontier chunk, pass-through applied, canonical, unique."""
    legal = _legal_mask_vec(me, opp, g)
    out_m, out_o = [], []
    one = np.uint64(1)
    for sq in range(g.nsq):
        sel = (legal >> np.uint64(sq)) & one != 0
        if not sel.any():
            continue
        m_s, o_s = me[sel], opp[sel]
        fl = _flips_vec(m_s, o_s, sq, g)
        child_m = o_s & ~fl
        child_o = m_s | fl | np.uint64(1 << sq)
        has = _legal_mask_vec(child_m, child_o, g) != 0
        swapped_has = np.zeros_like(has)
        if (~has).any():
            swapped_has[~has] = _legal_mask_vec(child_o[~has], child_m[~has], g) != 0
        # pass-through: the successor after a forced pass is the counted node
        keep_m = np.where(has, child_m, child_o)
        keep_o = np.where(has, child_o, child_m)
        keep = has | swapped_has
        out_m.append(keep_m[keep])
        out_o.append(keep_o[keep])
    if not out_m:
        return np.empty(0, np.uint64), np.empty(0, np.uint64)
    m = np.concatenate(out_m)
    o = np.concatenate(out_o)
    m, o = _canonical_vec(m, o, g)
    return _unique_pairs(m, o)


def census_exhaustive(root: Position, max_discs: Optional[int] = None,
                      chunk_size: int = 1 << 20, spill_dir: Optional[str] = None,
                      progress=None) -> dict:
    """Reachable has-moves positions per disc count, breadth first."""
    g = board.geometry(root.size)
    if max_discs is None:
        max_discs = g.nsq
    status = board.move_status(root)
    p = root
    while status.kind is board.StatusKind.MUST_PASS:
        p = p.swap()
        status = board.move_status(p)
    counts: dict = {}
    if status.kind is board.StatusKind.TERMINAL:
        return counts
    km, ko = board.canonicalize(p)
    fm = np.array([km], dtype=np.uint64)
    fo = np.array([ko], dtype=np.uint64)
    discs = p.discs
    while True:
        if len(fm) == 0:
            break
        counts[discs] = len(fm)
        if progress is not None:
            progress(discs, len(fm))
        if discs >= max_discs:
            break
        runs = []
        spill_paths = []
        for start in range(0, len(fm), chunk_size):
            cm, co = _expand_chunk(fm[start:start + chunk_size],
                                   fo[start:start + chunk_size], g)
            if spill_dir is not None:
                path = os.path.join(spill_dir, f"run-{discs}-{start}.npy")
                np.save(path, np.stack([cm, co]))
                spill_paths.append(path)
            else:
                runs.append((cm, co))
        if spill_paths:
            runs = []
            for path in spill_paths:
                pair = np.load(path)
                runs.append((pair[0], pair[1]))
                os.remove(path)
        fm = np.concatenate([r[0] for r in runs])
        fo = np.concatenate([r[1] for r in runs])
        fm, fo = _unique_pairs(fm, fo)
        discs += 1
    return counts
