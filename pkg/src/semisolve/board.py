"""Bitboard rules engine for NxN Othello (N = 4 or 6).

Squares are indexed row-major: index = row*N + col, with a1 = index 0
(column letters a.., row numbers 1..N).  Positions are side-relative:
`mover` holds the discs of the player to move, `opponent` the rest.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache


class IllegalMoveError(ValueError):
    """A move was applied that is not legal in the given position."""


class ContractViolationError(ValueError):
    """An operation was called on a position that violates its precondition."""


class Geometry:
    """Per-board-size bit masks, shift tables and dihedral transforms."""

    def __init__(self, size: int):
        if size not in (4, 6):
            raise ValueError(f"unsupported board size: {size}")
        n = size
        self.size = n
        self.nsq = n * n
        self.full = (1 << self.nsq) - 1
        col0 = sum(1 << (r * n) for r in range(n))
        colmax = col0 << (n - 1)
        not_col0 = self.full & ~col0
        not_colmax = self.full & ~colmax
        # (shift, post-shift wrap mask); positive shift = left shift
        self.dirs = (
            (1, not_col0),            # E
            (-1, not_colmax),         # W
            (n, self.full),           # S
            (-n, self.full),          # N
            (n + 1, not_col0),        # SE
            (n - 1, not_colmax),      # SW
            (-(n - 1), not_col0),     # NE
            (-(n + 1), not_colmax),   # NW
        )
        # masks for mirror / transpose implemented as masked bit swaps
        self._row_masks = [sum(1 << (r * n + c) for c in range(n)) for r in range(n)]
        self._col_masks = [col0 << c for c in range(n)]
        self._diag_lower = [  # r - c == d
            sum(1 << (r * n + c) for r in range(n) for c in range(n) if r - c == d)
            for d in range(n)
        ]
        self._diag_upper = [  # c - r == d
            sum(1 << (r * n + c) for r in range(n) for c in range(n) if c - r == d)
            for d in range(n)
        ]
        # square permutations for the 8 transforms, and their inverses
        self.perms = []
        self.inv_perms = []
        for t in range(8):
            perm = [0] * self.nsq
            for sq in range(self.nsq):
                perm[sq] = self.transform(1 << sq, t).bit_length() - 1
            inv = [0] * self.nsq
            for sq, dst in enumerate(perm):
                inv[dst] = sq
            self.perms.append(perm)
            self.inv_perms.append(inv)

    def shift(self, b, d: int):
        return (b << d) & self.full if d > 0 else b >> -d

    def flip_vertical(self, b):
        n = self.size
        out = b & (self._row_masks[n // 2] if n % 2 else 0)
        for r in range(n // 2):
            d = (n - 1 - 2 * r) * n
            out |= (b & self._row_masks[r]) << d
            out |= (b & self._row_masks[n - 1 - r]) >> d
        return out

    def mirror_horizontal(self, b):
        n = self.size
        out = b & (self._col_masks[n // 2] if n % 2 else 0)
        for c in range(n // 2):
            d = n - 1 - 2 * c
            out |= (b & self._col_masks[c]) << d
            out |= (b & self._col_masks[n - 1 - c]) >> d
        return out

    def transpose(self, b):
        n = self.size
        out = b & self._diag_lower[0]
        for d in range(1, n):
            s = d * (n - 1)
            out |= (b & self._diag_lower[d]) >> s
            out |= (b & self._diag_upper[d]) << s
        return out

    def transform(self, b, t: int):
        """Apply dihedral transform t (0..7) to a bitboard.

        Works elementwise on numpy uint64 arrays as well as plain ints.
        """
        if t >= 4:
            b = self.transpose(b)
        if t & 1:
            b = self.mirror_horizontal(b)
        if t & 2:
            b = self.flip_vertical(b)
        return b


@lru_cache(maxsize=None)
def geometry(size: int) -> Geometry:
    return Geometry(size)


@dataclass(frozen=True)
class Position:
    mover: int
    opponent: int
    size: int

    def __post_init__(self):
        g = geometry(self.size)
        if self.mover & self.opponent:
            raise ContractViolationError("mover and opponent bitboards overlap")
        if (self.mover | self.opponent) & ~g.full:
            raise ContractViolationError("bits set outside the board")

    @property
    def discs(self) -> int:
        return (self.mover | self.opponent).bit_count()

    @property
    def empties(self) -> int:
        return self.size * self.size - self.discs

    def swap(self) -> "Position":
        return Position(self.opponent, self.mover, self.size)


class StatusKind(Enum):
    HAS_MOVES = "has-moves"
    MUST_PASS = "must-pass"
    TERMINAL = "terminal"


@dataclass(frozen=True)
class MoveStatus:
    kind: StatusKind
    moves: tuple  # ordered ascending by square index; empty unless HAS_MOVES


def initial_position(size: int) -> Position:
    """Starting position: 2x2 centre block, opposing colors diagonal.

    White on c3/d4 and Black (the mover) on d3/c4 for 6x6; the 4x4 layout
    mirrors this one square up-left.
    """
    if size not in (4, 6):
        raise ValueError(f"unsupported board size: {size}")
    n = size
    h = n // 2
    a = (h - 1) * n + (h - 1)  # upper-left centre square
    white = (1 << a) | (1 << (a + n + 1))
    black = (1 << (a + 1)) | (1 << (a + n))
    return Position(mover=black, opponent=white, size=size)


def legal_move_mask(mover: int, opponent: int, g: Geometry) -> int:
    empty = g.full & ~(mover | opponent)
    moves = 0
    for d, mask in g.dirs:
        x = g.shift(mover, d) & mask & opponent
        while x:
            nxt = g.shift(x, d) & mask
            moves |= nxt & empty
            x = nxt & opponent
    return moves


def flip_mask(mover: int, opponent: int, sq: int, g: Geometry) -> int:
    """Discs flipped by placing on `sq`; 0 if the placement flips nothing."""
    placed = 1 << sq
    flips = 0
    for d, mask in g.dirs:
        run = 0
        x = g.shift(placed, d) & mask
        while x & opponent:
            run |= x
            x = g.shift(x, d) & mask
        if x & mover:
            flips |= run
    return flips


def move_status(p: Position) -> MoveStatus:
    g = geometry(p.size)
    mask = legal_move_mask(p.mover, p.opponent, g)
    if mask:
        moves = []
        while mask:
            low = mask & -mask
            moves.append(low.bit_length() - 1)
            mask ^= low
        return MoveStatus(StatusKind.HAS_MOVES, tuple(moves))
    if legal_move_mask(p.opponent, p.mover, g):
        return MoveStatus(StatusKind.MUST_PASS, ())
    return MoveStatus(StatusKind.TERMINAL, ())


def apply_move(p: Position, sq: int) -> Position:
    g = geometry(p.size)
    if not 0 <= sq < g.nsq or (p.mover | p.opponent) >> sq & 1:
        raise IllegalMoveError(f"square {sq} is not playable")
    flips = flip_mask(p.mover, p.opponent, sq, g)
    if not flips:
        raise IllegalMoveError(f"move {move_to_text(sq, p.size)} flips no discs")
    return Position(
        mover=p.opponent & ~flips,
        opponent=p.mover | flips | (1 << sq),
        size=p.size,
    )


def apply_pass(p: Position) -> Position:
    status = move_status(p)
    if status.kind is not StatusKind.MUST_PASS:
        raise ContractViolationError(f"pass applied to a {status.kind.value} position")
    return p.swap()


def final_score(p: Position) -> int:
    status = move_status(p)
    if status.kind is not StatusKind.TERMINAL:
        raise ContractViolationError("final_score on a non-terminal position")
    return score_if_terminal(p)


def score_if_terminal(p: Position) -> int:
    """Disc difference with empties awarded to the winner (no status check)."""
    mine = p.mover.bit_count()
    theirs = p.opponent.bit_count()
    if mine > theirs:
        return mine - theirs + p.empties
    if theirs > mine:
        return mine - theirs - p.empties
    return 0


def canonicalize(p: Position) -> tuple:
    """Lexicographically smallest (mover, opponent) over the 8 dihedral maps."""
    g = geometry(p.size)
    best = None
    for t in range(8):
        cand = (g.transform(p.mover, t), g.transform(p.opponent, t))
        if best is None or cand < best:
            best = cand
    return best


def canonicalize_with_transform(p: Position) -> tuple:
    """Like canonicalize, but also returns the transform index that was applied."""
    g = geometry(p.size)
    best = None
    best_t = 0
    for t in range(8):
        cand = (g.transform(p.mover, t), g.transform(p.opponent, t))
        if best is None or cand < best:
            best, best_t = cand, t
    return best[0], best[1], best_t


def transform_square(sq: int, t: int, size: int) -> int:
    return geometry(size).perms[t][sq]


def inverse_transform_square(sq: int, t: int, size: int) -> int:
    return geometry(size).inv_perms[t][sq]


# --- textual forms ---------------------------------------------------------

PASS_TEXT = "ps"


def move_to_text(sq: int, size: int) -> str:
    if sq is None or sq >= size * size or sq < 0:
        return PASS_TEXT
    row, col = divmod(sq, size)
    return f"{chr(ord('a') + col)}{row + 1}"


def move_from_text(text: str, size: int) -> int | None:
    text = text.strip().lower()
    if text == PASS_TEXT:
        return None
    if len(text) < 2:
        raise ValueError(f"bad move {text!r}")
    col = ord(text[0]) - ord("a")
    try:
        row = int(text[1:]) - 1
    except ValueError:
        raise ValueError(f"bad move {text!r}") from None
    if not (0 <= col < size and 0 <= row < size):
        raise ValueError(f"move {text!r} off the {size}x{size} board")
    return row * size + col


def position_to_text(p: Position) -> str:
    return f"{p.size}:{p.mover:016x}:{p.opponent:016x}"


def position_from_text(text: str) -> Position:
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ValueError(f"bad position {text!r}")
    size = int(parts[0])
    if size not in (4, 6):
        raise ValueError(f"unsupported board size: {size}")
    mover = int(parts[1], 16)
    opponent = int(parts[2], 16)
    return Position(mover, opponent, size)


def render(p: Position, mover_char: str = "X", opp_char: str = "O") -> str:
    n = p.size
    lines = ["  " + " ".join(chr(ord("a") + c) for c in range(n))]
    for r in range(n):
        cells = []
        for c in range(n):
            b = 1 << (r * n + c)
            cells.append(mover_char if p.mover & b else opp_char if p.opponent & b else ".")
        lines.append(f"{r + 1} " + " ".join(cells))
    return "\n".join(lines)
