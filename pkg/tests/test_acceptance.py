"""Acceptance gate: one pass/fail check per headline requirement.

Each test prints a single summary line so a full run reads as a checklist.
The 6x6 weak solve and the deep census rows are long-running; they are
real solves, not cached artifacts, so expect the suite to take a while.
"""
import random
import time

import pytest

from semisolve import board, census, oracle, theory
from semisolve.board import Position, StatusKind
from semisolve.fast import FastSolver6
from semisolve.kinds import NodeKind
from semisolve.search import (
    Ordering,
    make_engine,
    semi_strong_solve,
    weak_solve,
)
from semisolve.store import Store, StoreFormatError, load_database, write_store
from conftest import playout_to_empties

TABLE_6X6_EXHAUSTIVE = {
    4: 1, 5: 1, 6: 3, 7: 14, 8: 60, 9: 314, 10: 1632, 11: 9069,
    12: 51964, 13: 292946, 14: 1706168, 15: 9289258, 16: 51072917,
}


def note(line: str):
    print(f"\n[acceptance] {line}")


def test_weak_solve_6x6_value():
    t0 = time.time()
    solver = FastSolver6()
    p = board.initial_position(6)
    value = solver.value(p.mover, p.opponent)
    elapsed = time.time() - t0
    ok = value == -4 and elapsed < 3600
    note(f"6x6 weak solve: value {value} in {elapsed:.0f}s -> "
         f"{'PASS' if ok else 'FAIL'}")
    assert value == -4
    assert elapsed < 3600


def test_census_exhaustive_rows_4_to_16():
    t0 = time.time()
    got = census.census_exhaustive(board.initial_position(6), max_discs=16,
                                   chunk_size=1 << 22)
    elapsed = time.time() - t0
    ok = got == TABLE_6X6_EXHAUSTIVE
    note(f"6x6 exhaustive census rows 4-16 in {elapsed:.0f}s -> "
         f"{'PASS' if ok else 'FAIL'}")
    assert got == TABLE_6X6_EXHAUSTIVE


def test_theory_equivalence():
    t0 = time.time()
    for b in range(2, 9):
        for d in range(1, 25):
            for kind in theory.KINDS:
                assert theory.count_recurrence(kind, d, b) == \
                    theory.count_closed_form(kind, d, b)
    live_ok = True
    for b in (2, 3, 4):
        for depth in range(1, 14):
            sim = theory.simulate_structure(b, depth)
            counts, stats = theory.synthetic_search_counts(b, depth)
            if stats.researches != 0:
                live_ok = False
            for kind in theory.KINDS:
                for d in range(1, depth + 1):
                    want = theory.count_closed_form(kind, d, b)
                    if sim[kind][d] != want or counts[kind][d] != want:
                        live_ok = False
    elapsed = time.time() - t0
    ok = live_ok and elapsed < 60
    note(f"theory equivalence (recurrence/closed-form/simulated/live) in "
         f"{elapsed:.1f}s -> {'PASS' if ok else 'FAIL'}")
    assert live_ok
    assert elapsed < 60


def test_semi_strong_4x4_zero_violations(oracle4):
    t0 = time.time()
    root = board.initial_position(4)
    db = semi_strong_solve(root)
    report = oracle.verify_semi_strong(db, oracle4, root)
    elapsed = time.time() - t0
    ok = report.ok and elapsed < 60
    note(f"4x4 semi-strong pipeline: {report.checked_records} records, "
         f"{report.reachable_positions} reachable, "
         f"{len(report.coverage_violations)}+{len(report.value_violations)}+"
         f"{len(report.best_move_violations)} violations in {elapsed:.1f}s -> "
         f"{'PASS' if ok else 'FAIL'}")
    assert report.ok
    assert elapsed < 60


def test_monotone_census_both_sizes():
    ok = True
    root4 = board.initial_position(4)
    ab4 = census.census_search("alphabeta", root4)
    re4 = census.census_search("reopening", root4)
    ex4 = census.census_exhaustive(root4)
    for d in sorted(ex4):
        a, r, e = ab4.get(d, 0), re4.get(d, 0), ex4[d]
        if not (a <= r <= e):
            ok = False

    # 6x6 partial depth: run all three columns from a common midgame root
    rng = random.Random(13)
    root6 = playout_to_empties(6, 12, rng)
    ab6 = census.census_search("alphabeta", root6)
    re6 = census.census_search("reopening", root6)
    ex6 = census.census_exhaustive(root6)
    for d in sorted(set(ab6) | set(re6)):
        a, r, e = ab6.get(d, 0), re6.get(d, 0), ex6.get(d, 0)
        if not (a <= r <= e):
            ok = False
    note(f"monotone census alphabeta <= reopening <= exhaustive on all rows "
         f"(4x4 and 6x6 partial) -> {'PASS' if ok else 'FAIL'}")
    assert ok


def test_ratio_reopening_over_alphabeta():
    root4 = board.initial_position(4)
    ab4 = sum(census.census_search("alphabeta", root4).values())
    re4 = sum(census.census_search("reopening", root4).values())

    rng = random.Random(29)
    ratios = []
    for _ in range(3):
        root6 = playout_to_empties(6, 11, rng)
        a = sum(census.census_search("alphabeta", root6).values())
        r = sum(census.census_search("reopening", root6).values())
        ratios.append(r / a)
    ok = re4 > ab4
    note(f"reopening/alphabeta unique positions: 4x4 {re4}/{ab4} = "
         f"{re4 / ab4:.2f}; 6x6 partial ratios "
         f"{', '.join(f'{x:.2f}' for x in ratios)} "
         f"(reference observation: about 32x on the full 6x6 run) -> "
         f"{'PASS' if ok else 'FAIL'}")
    assert ok


def test_bound_soundness_10000_null_windows(oracle4):
    rng = random.Random(101)
    engine = make_engine(4)
    violations = 0
    for i in range(10000):
        p = playout_to_empties(4, rng.randint(2, 9), rng)
        truth = oracle4.value_of(p)
        gamma = rng.randrange(-16, 16)
        kind = NodeKind.C if i % 2 == 0 else NodeKind.A
        got = engine.search(p, gamma, gamma + 1, kind)
        if got >= gamma + 1:
            if truth < got:
                violations += 1
        else:
            if truth > got:
                violations += 1
    note(f"bound soundness: 10000 randomized C/A null-window calls, "
         f"{violations} violations -> {'PASS' if violations == 0 else 'FAIL'}")
    assert violations == 0


def test_store_round_trip_and_rejection(tmp_path, oracle4):
    db = semi_strong_solve(board.initial_position(4), endgame_threshold=3)
    path = str(tmp_path / "acc.ssdb")
    write_store(path, db)
    back = load_database(path)
    bit_exact = back.records == db.records and \
        back.size == db.size and back.endgame_threshold == db.endgame_threshold

    s = Store(path)
    lookups_ok = True
    rng = random.Random(77)
    for _ in range(50):
        p = playout_to_empties(4, rng.randint(1, 9), rng)
        ans = s.lookup(p)
        if ans.status in ("covered", "on-demand") and ans.value != oracle4.value_of(p):
            lookups_ok = False

    raw = bytearray(open(path, "rb").read())
    bad_magic = bytes(b"XXXX") + bytes(raw[4:])
    open(str(tmp_path / "m.ssdb"), "wb").write(bad_magic)
    swapped = bytearray(raw)
    swapped[16:40], swapped[40:64] = raw[40:64], raw[16:40]
    open(str(tmp_path / "u.ssdb"), "wb").write(bytes(swapped))
    rejected = 0
    for name in ("m.ssdb", "u.ssdb"):
        try:
            Store(str(tmp_path / name))
        except StoreFormatError:
            rejected += 1
    ok = bit_exact and lookups_ok and rejected == 2
    note(f"store round-trip bit-exact={bit_exact}, lookups exact={lookups_ok}, "
         f"corrupt files rejected {rejected}/2 -> {'PASS' if ok else 'FAIL'}")
    assert ok
