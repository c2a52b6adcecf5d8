import random

import pytest

from semisolve import board
from semisolve.board import Position, StatusKind

DIRS8 = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]


def naive_moves(p: Position):
    """Per-square, per-direction scan; the slow independent rules oracle."""
    n = p.size
    occupied = p.mover | p.opponent
    moves = []
    for sq in range(n * n):
        if occupied >> sq & 1:
            continue
        if naive_flips(p, sq):
            moves.append(sq)
    return moves


def naive_flips(p: Position, sq: int) -> int:
    n = p.size
    r0, c0 = divmod(sq, n)
    flips = 0
    for dr, dc in DIRS8:
        run = 0
        r, c = r0 + dr, c0 + dc
        while 0 <= r < n and 0 <= c < n and (p.opponent >> (r * n + c)) & 1:
            run |= 1 << (r * n + c)
            r += dr
            c += dc
        if run and 0 <= r < n and 0 <= c < n and (p.mover >> (r * n + c)) & 1:
            flips |= run
    return flips


def random_playout_positions(size: int, games: int, seed: int = 0):
    """Every position traversed in `games` random playouts from the start."""
    rng = random.Random(seed)
    out = []
    for _ in range(games):
        p = board.initial_position(size)
        while True:
            out.append(p)
            status = board.move_status(p)
            if status.kind is StatusKind.TERMINAL:
                break
            if status.kind is StatusKind.MUST_PASS:
                p = board.apply_pass(p)
                continue
            p = board.apply_move(p, rng.choice(status.moves))
    return out


def playout_to_empties(size: int, empties: int, rng: random.Random):
    """A random reachable has-moves position with exactly `empties` empties."""
    while True:
        p = board.initial_position(size)
        while p.empties > empties:
            status = board.move_status(p)
            if status.kind is StatusKind.TERMINAL:
                break
            if status.kind is StatusKind.MUST_PASS:
                p = board.apply_pass(p)
                continue
            p = board.apply_move(p, rng.choice(status.moves))
        if p.empties == empties and board.move_status(p).kind is StatusKind.HAS_MOVES:
            return p


@pytest.fixture(scope="session")
def oracle4():
    from semisolve import oracle
    return oracle.solve_all(board.initial_position(4))
