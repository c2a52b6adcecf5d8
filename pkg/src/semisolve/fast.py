"""Numba-compiled fail-soft PVS endgame solver for the 6x6 board.

This is the throughput path behind `solve-weak --size 6` and the
on-demand endgame answers; it computes values only.  The instrumented
pure-Python engine in `search` stays the reference implementation.
"""
from __future__ import annotations

import numpy as np
from numba import njit, uint64

FULL36 = np.uint64((1 << 36) - 1)
_COL0 = sum(1 << (r * 6) for r in range(6))
_COL5 = _COL0 << 5
NOT_COL0 = np.uint64(((1 << 36) - 1) & ~_COL0)
NOT_COL5 = np.uint64(((1 << 36) - 1) & ~_COL5)
ALL36 = FULL36

# direction shift amounts (positive = left shift) and post-shift wrap masks
DIR_SHIFTS = np.array([1, -1, 6, -6, 7, 5, -5, -7], dtype=np.int64)
DIR_MASKS = np.array([NOT_COL0, NOT_COL5, ALL36, ALL36,
                      NOT_COL0, NOT_COL5, NOT_COL0, NOT_COL5], dtype=np.uint64)

# masked-swap constants for the dihedral transforms
_ROWS = [sum(1 << (r * 6 + c) for c in range(6)) for r in range(6)]
_COLS = [sum(1 << (r * 6 + c) for r in range(6)) for c in range(6)]
_DIAG_LO = [sum(1 << (r * 6 + c) for r in range(6) for c in range(6) if r - c == d)
            for d in range(6)]
_DIAG_HI = [sum(1 << (r * 6 + c) for r in range(6) for c in range(6) if c - r == d)
            for d in range(6)]
ROW_M = np.array(_ROWS, dtype=np.uint64)
COL_M = np.array(_COLS, dtype=np.uint64)
DLO_M = np.array(_DIAG_LO, dtype=np.uint64)
DHI_M = np.array(_DIAG_HI, dtype=np.uint64)

TT_LOG2 = 23                      # 8M entries
TT_MIN_EMPTIES = 4                # no table traffic in shallow endgames
ORDER_MIN_EMPTIES = 5             # natural move order below this
CANON_MIN_EMPTIES = 20            # fold symmetric duplicates near the root
HASH_A = np.uint64(0x9E3779B97F4A7C15)
HASH_B = np.uint64(0xC2B2AE3D27D4EB4F)
NO_MOVE = 255


def _square_weights():
    """Ordering tie-break per square: corners first, X-squares last."""
    w = np.full(36, 26, dtype=np.int64)
    for r in range(6):
        for c in range(6):
            if r in (0, 5) or c in (0, 5):
                w[r * 6 + c] = 12
    for sq in (0, 5, 30, 35):
        w[sq] = 0
    for sq in (7, 10, 25, 28):          # diagonal neighbours of a corner
        w[sq] = 60
    for sq in (1, 4, 6, 11, 24, 29, 31, 34):  # edge neighbours of a corner
        w[sq] = 40
    for sq in (14, 15, 20, 21):
        w[sq] = 20
    return w


SQ_W = _square_weights()


@njit(uint64(uint64), cache=True, nogil=True)
def popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(uint64(uint64, uint64), cache=True, nogil=True)
def legal6(me, opp):
    # branch-free: a capture line holds at most 4 discs on a 6-wide board
    empty = ALL36 & ~(me | opp)
    moves = np.uint64(0)
    for i in range(8):
        d = DIR_SHIFTS[i]
        mask = DIR_MASKS[i]
        if d > 0:
            s = np.uint64(d)
            x = (me << s) & mask & opp
            x |= (x << s) & mask & opp
            x |= (x << s) & mask & opp
            x |= (x << s) & mask & opp
            moves |= (x << s) & mask & empty
        else:
            s = np.uint64(-d)
            x = (me >> s) & mask & opp
            x |= (x >> s) & mask & opp
            x |= (x >> s) & mask & opp
            x |= (x >> s) & mask & opp
            moves |= (x >> s) & mask & empty
    return moves & ALL36


@njit(uint64(uint64, uint64, uint64), cache=True, nogil=True)
def flips6(me, opp, placed):
    flips = np.uint64(0)
    for i in range(8):
        d = DIR_SHIFTS[i]
        mask = DIR_MASKS[i]
        if d > 0:
            s = np.uint64(d)
            x = (placed << s) & mask & opp
            x |= (x << s) & mask & opp
            x |= (x << s) & mask & opp
            x |= (x << s) & mask & opp
            if (x << s) & mask & me:
                flips |= x
        else:
            s = np.uint64(-d)
            x = (placed >> s) & mask & opp
            x |= (x >> s) & mask & opp
            x |= (x >> s) & mask & opp
            x |= (x >> s) & mask & opp
            if (x >> s) & mask & me:
                flips |= x
    return flips


@njit(uint64(uint64), cache=True, nogil=True)
def vflip6(b):
    out = np.uint64(0)
    for r in range(3):
        d = np.uint64((5 - 2 * r) * 6)
        out |= (b & ROW_M[r]) << d
        out |= (b & ROW_M[5 - r]) >> d
    return out


@njit(uint64(uint64), cache=True, nogil=True)
def hflip6(b):
    out = np.uint64(0)
    for c in range(3):
        d = np.uint64(5 - 2 * c)
        out |= (b & COL_M[c]) << d
        out |= (b & COL_M[5 - c]) >> d
    return out


@njit(uint64(uint64), cache=True, nogil=True)
def transpose6(b):
    out = b & DLO_M[0]
    for d in range(1, 6):
        s = np.uint64(d * 5)
        out |= (b & DLO_M[d]) >> s
        out |= (b & DHI_M[d]) << s
    return out


@njit(cache=True, nogil=True)
def canonical6(me, opp):
    """Lexicographically smallest (me, opp) over the 8 dihedral images."""
    bm, bo = me, opp
    tm, to = transpose6(me), transpose6(opp)
    for variant in range(8):
        if variant < 4:
            m, o = me, opp
        else:
            m, o = tm, to
        if variant & 1:
            m, o = hflip6(m), hflip6(o)
        if variant & 2:
            m, o = vflip6(m), vflip6(o)
        if m < bm or (m == bm and o < bo):
            bm, bo = m, o
    return bm, bo


@njit(cache=True, nogil=True)
def terminal_score6(me, opp):
    mine = popcount(me)
    theirs = popcount(opp)
    if mine > theirs:
        return np.int64(mine - theirs + (36 - mine - theirs))
    if theirs > mine:
        return np.int64(mine) - np.int64(theirs) - np.int64(36 - mine - theirs)
    return np.int64(0)


@njit(cache=True, nogil=True)
def _search(me, opp, alpha, beta, km, ko, lo, hi, emp, bm, order_sc, keys_sc, flip_sc):
    empties = np.int64(36) - np.int64(popcount(me | opp))
    if empties == 1:
        # single empty square: play it, pass it, or end the game
        last = ALL36 & ~(me | opp)
        fl = flips6(me, opp, last)
        if fl != np.uint64(0):
            return terminal_score6(me | fl | last, opp & ~fl)
        fl = flips6(opp, me, last)
        if fl != np.uint64(0):
            return -terminal_score6(opp | fl | last, me & ~fl)
        return terminal_score6(me, opp)

    moves = legal6(me, opp)
    if moves == np.uint64(0):
        if legal6(opp, me) == np.uint64(0):
            return terminal_score6(me, opp)
        return -_search(opp, me, -beta, -alpha, km, ko, lo, hi, emp, bm,
                        order_sc, keys_sc, flip_sc)

    if empties >= CANON_MIN_EMPTIES:
        me, opp = canonical6(me, opp)
        moves = legal6(me, opp)

    use_tt = empties >= TT_MIN_EMPTIES
    slot = np.int64(-1)
    tt_move = np.int64(-1)
    if use_tt:
        h = (me * HASH_A) ^ (opp * HASH_B)
        base = np.int64(h >> np.uint64(64 - TT_LOG2)) & ~np.int64(1)
        for s2 in range(2):
            cand = base + s2
            if km[cand] == me and ko[cand] == opp:
                slot = cand
                tlo = np.int64(lo[cand])
                thi = np.int64(hi[cand])
                if tlo == thi or tlo >= beta:
                    return tlo
                if thi <= alpha:
                    return thi
                tt_move = np.int64(bm[cand])
                break
        if slot < 0:
            # prefer replacing the shallower of the two ways
            a0, a1 = base, base + 1
            slot = a0 if emp[a0] <= emp[a1] else a1

    # move list + flip cache; heuristic order: TT move, then fewest
    # opponent replies, then square index
    row = empties
    n = 0
    mm = moves
    while mm != np.uint64(0):
        low = mm & (~mm + np.uint64(1))
        sq = np.int64(popcount(low - np.uint64(1)))
        mm ^= low
        order_sc[row, n] = sq
        flip_sc[row, n] = flips6(me, opp, low)
        keys_sc[row, n] = sq
        n += 1
    if n > 1 and empties >= ORDER_MIN_EMPTIES:
        for j in range(n):
            sq = order_sc[row, j]
            fl = flip_sc[row, j]
            nme = opp & ~fl
            nopp = me | fl | (np.uint64(1) << np.uint64(sq))
            key = np.int64(popcount(legal6(nme, nopp))) * 64 + SQ_W[sq]
            if sq == tt_move:
                key = np.int64(-1000)
            keys_sc[row, j] = key
        for j in range(1, n):  # insertion sort, ascending key
            kj = keys_sc[row, j]
            sj = order_sc[row, j]
            fj = flip_sc[row, j]
            i = j - 1
            while i >= 0 and keys_sc[row, i] > kj:
                keys_sc[row, i + 1] = keys_sc[row, i]
                order_sc[row, i + 1] = order_sc[row, i]
                flip_sc[row, i + 1] = flip_sc[row, i]
                i -= 1
            keys_sc[row, i + 1] = kj
            order_sc[row, i + 1] = sj
            flip_sc[row, i + 1] = fj

    orig_alpha = alpha
    best = np.int64(-64)
    best_sq = np.int64(NO_MOVE)
    for j in range(n):
        sq = order_sc[row, j]
        fl = flip_sc[row, j]
        nme = opp & ~fl
        nopp = me | fl | (np.uint64(1) << np.uint64(sq))
        if j == 0:
            score = -_search(nme, nopp, -beta, -alpha, km, ko, lo, hi, emp, bm,
                             order_sc, keys_sc, flip_sc)
        else:
            score = -_search(nme, nopp, -alpha - 1, -alpha, km, ko, lo, hi, emp, bm,
                             order_sc, keys_sc, flip_sc)
            if alpha < score < beta:
                alpha = score
                score = -_search(nme, nopp, -beta, -alpha, km, ko, lo, hi, emp, bm,
                                 order_sc, keys_sc, flip_sc)
        if score > best:
            best = score
            best_sq = sq
        if score > alpha:
            alpha = score
        if alpha >= beta:
            break

    if use_tt:
        km[slot] = me
        ko[slot] = opp
        emp[slot] = empties
        bm[slot] = best_sq
        if best <= orig_alpha:
            lo[slot] = -64
            hi[slot] = best
        elif best >= beta:
            lo[slot] = best
            hi[slot] = 64
        else:
            lo[slot] = best
            hi[slot] = best
    return best


class FastSolver6:
    """Owns a transposition table; reusable across solves (warm table)."""

    def __init__(self, tt_log2: int = TT_LOG2):
        size = 1 << tt_log2
        self.km = np.zeros(size, dtype=np.uint64)
        self.ko = np.zeros(size, dtype=np.uint64)
        self.lo = np.zeros(size, dtype=np.int8)
        self.hi = np.zeros(size, dtype=np.int8)
        self.emp = np.zeros(size, dtype=np.int8)
        self.bm = np.zeros(size, dtype=np.uint8)
        self.order_sc = np.zeros((37, 36), dtype=np.int64)
        self.keys_sc = np.zeros((37, 36), dtype=np.int64)
        self.flip_sc = np.zeros((37, 36), dtype=np.uint64)

    def _nws(self, mover: int, opponent: int, alpha: int) -> int:
        return int(_search(np.uint64(mover), np.uint64(opponent),
                           np.int64(alpha), np.int64(alpha + 1),
                           self.km, self.ko, self.lo, self.hi, self.emp, self.bm,
                           self.order_sc, self.keys_sc, self.flip_sc))

    def search(self, mover: int, opponent: int, alpha: int, beta: int) -> int:
        """Fail-soft value for the window; exact when strictly inside."""
        return int(_search(np.uint64(mover), np.uint64(opponent),
                           np.int64(alpha), np.int64(beta),
                           self.km, self.ko, self.lo, self.hi, self.emp, self.bm,
                           self.order_sc, self.keys_sc, self.flip_sc))

    def value(self, mover: int, opponent: int) -> int:
        """Exact value via null-window bisection (scores are even on 6x6)."""
        lo_b, hi_b = -36, 36
        while lo_b < hi_b:
            mid = (lo_b + hi_b) // 2
            mid -= mid % 2  # all 6x6 scores are even; keep probes aligned
            r = self._nws(mover, opponent, mid)
            if r > mid:
                lo_b = r
            else:
                hi_b = r
        return lo_b

    def solve(self, mover: int, opponent: int):
        """Exact value (mover view) and best square; best is None when the
        mover has no legal move (pass or terminal)."""
        mv = legal6(np.uint64(mover), np.uint64(opponent))
        if mv == np.uint64(0):
            if legal6(np.uint64(opponent), np.uint64(mover)) == np.uint64(0):
                return int(terminal_score6(np.uint64(mover), np.uint64(opponent))), None
            v, _ = self.solve(opponent, mover)
            return -v, None
        v = self.value(mover, opponent)
        # lowest square whose child value equals -v
        mm = int(mv)
        while mm:
            low = mm & -mm
            sq = low.bit_length() - 1
            mm ^= low
            fl = int(flips6(np.uint64(mover), np.uint64(opponent), np.uint64(low)))
            nme = opponent & ~fl
            nopp = mover | fl | low
            r = self.search(nme, nopp, -v - 1, -v + 1)
            if r == -v:
                return v, sq
        raise AssertionError("no move attains the solved value")
