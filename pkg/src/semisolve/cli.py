"""Command-line entry point for the solve/census/theory/verify/serve pipelines."""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import board, census, oracle, theory
from .board import Position, StatusKind
from .search import Ordering, SearchStats, semi_strong_solve, weak_solve, make_engine
from .store import Store, StoreFormatError, load_database, write_store

DEFAULT_DB_ENV = "SEMISOLVE_DB"


def _root(args) -> Position:
    if getattr(args, "position", None):
        return board.position_from_text(args.position)
    return board.initial_position(args.size)


def _pv_text(pv, size):
    return " ".join(board.move_to_text(m, size) for m in pv)


def _fast_pv(mover: int, opponent: int):
    """Principal variation from the compiled 6x6 solver (warm-table walk)."""
    from .fast import FastSolver6
    fs = FastSolver6()
    value, _ = fs.solve(mover, opponent)
    pv = []
    p = Position(mover, opponent, 6)
    while True:
        status = board.move_status(p)
        if status.kind is StatusKind.TERMINAL:
            break
        if status.kind is StatusKind.MUST_PASS:
            pv.append(None)
            p = p.swap()
            continue
        _, sq = fs.solve(p.mover, p.opponent)
        pv.append(sq)
        p = board.apply_move(p, sq)
    return value, pv


def cmd_solve_weak(args) -> int:
    root = _root(args)
    t0 = time.time()
    if root.size == 6 and not args.pure:
        value, pv = _fast_pv(root.mover, root.opponent)
    else:
        ordering = Ordering(mode=args.ordering)
        engine = make_engine(root.size, ordering=ordering, tt_capacity=args.tt_capacity)
        value, pv = weak_solve(root, engine)
    print(f"value {value}")
    print(f"pv {_pv_text(pv, root.size)}")
    print(f"time {time.time() - t0:.1f}s", file=sys.stderr)
    return 0


def cmd_solve_semistrong(args) -> int:
    root = _root(args)
    stats = SearchStats()
    trace = None
    if args.trace:
        def trace(key, kind, value, best):
            print(f"{key[0]:016x}:{key[1]:016x} {kind.value} {value} "
                  f"{board.move_to_text(best, root.size)}")
    t0 = time.time()
    db = semi_strong_solve(root, ordering=Ordering(mode=args.ordering),
                           endgame_threshold=args.endgame_threshold,
                           tt_capacity=args.tt_capacity, stats=stats, trace=trace)
    print(f"root value {db.root_value}; {len(db.records)} records; "
          f"{time.time() - t0:.1f}s", file=sys.stderr)
    if args.out:
        write_store(args.out, db)
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


def cmd_census(args) -> int:
    root = _root(args)
    if args.algo == "exhaustive":
        col = census.census_exhaustive(
            root, max_discs=args.max_discs, chunk_size=args.chunk_size,
            spill_dir=args.spill_dir,
            progress=lambda d, n: print(f"discs {d}: {n}", file=sys.stderr, flush=True))
        table = census.merge_tables(root.size, exhaustive=col)
    else:
        name = "alphabeta" if args.algo == "ab" else "reopening"
        ordering = Ordering(mode=args.ordering)
        if args.ordering == "oracle-optimal":
            ordering = Ordering(mode="oracle-optimal",
                                values=oracle.solve_all(root).values)
        col = census.census_search(name, root, ordering=ordering,
                                   include_tt_hits=args.include_tt_hits,
                                   key_limit=args.key_limit)
        table = census.merge_tables(root.size, **{name: col})
    text = table.to_tsv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_theory(args) -> int:
    text = theory.theory_table_tsv(args.b, args.depth)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    total = theory.total_nodes(args.b, args.depth)
    print(f"total {total}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    db = load_database(args.db)
    root = _root_for_size(db.size, args)
    odb = oracle.solve_all(root)
    report = oracle.verify_semi_strong(db, odb, root)
    sys.stdout.write(report.to_tsv())
    print(f"{'PASS' if report.ok else 'FAIL'}: {report.checked_records} records, "
          f"{report.reachable_positions} reachable positions", file=sys.stderr)
    return 0 if report.ok else 1


def _root_for_size(size, args):
    if getattr(args, "position", None):
        return board.position_from_text(args.position)
    return board.initial_position(size)


def cmd_dump(args) -> int:
    store = Store(args.db)
    for line in store.dump_tsv(limit=args.limit):
        print(line)
    return 0


def cmd_serve(args) -> int:
    from .server import serve
    serve(args.db, port=args.port, host=args.host)
    return 0


def cmd_play(args) -> int:
    store = Store(args.db)
    from .server import answer_for
    p = board.initial_position(store.size)
    human_is_mover = args.color == "black"
    while True:
        status = board.move_status(p)
        print()
        print(board.render(p, "X", "O"))
        if status.kind is StatusKind.TERMINAL:
            score = board.score_if_terminal(p)
            human_score = score if human_is_mover else -score
            outcome = "win" if human_score > 0 else "loss" if human_score < 0 else "draw"
            print(f"game over: {outcome} for you ({human_score:+d})")
            return 0
        if status.kind is StatusKind.MUST_PASS:
            print(("you must pass" if human_is_mover else "AI passes"))
            p = p.swap()
            human_is_mover = not human_is_mover
            continue
        if human_is_mover:
            legal = [board.move_to_text(m, p.size) for m in status.moves]
            move = input(f"your move {legal}: ").strip().lower()
            try:
                sq = board.move_from_text(move, p.size)
            except ValueError as exc:
                print(exc)
                continue
            if sq is None or sq not in status.moves:
                print("not a legal move")
                continue
        else:
            ans = answer_for(store, p)
            if ans["status"] == "not-covered":
                print("position outside the stored guarantee; AI plays first legal move")
                sq = status.moves[0]
            else:
                sq = board.move_from_text(ans["bestMove"], p.size)
                print(f"AI plays {ans['bestMove']} "
                      f"(asserts value {ans['value']:+d} for itself)")
        p = board.apply_move(p, sq)
        human_is_mover = not human_is_mover
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semisolve",
                                 description="solve, census and serve small Othello boards")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_size(p):
        p.add_argument("--size", type=int, choices=(4, 6), default=6)
        p.add_argument("--position", help="explicit root, form <size>:<hex16>:<hex16>")

    p = sub.add_parser("solve-weak", help="exact root value + principal variation")
    add_size(p)
    p.add_argument("--ordering", choices=("heuristic", "natural"), default="heuristic")
    p.add_argument("--tt-capacity", type=int, default=None)
    p.add_argument("--pure", action="store_true",
                   help="force the pure-Python engine even on 6x6")
    p.set_defaults(func=cmd_solve_weak)

    p = sub.add_parser("solve-semistrong", help="reopening solve; optionally write a store")
    add_size(p)
    p.add_argument("--ordering", choices=("heuristic", "natural"), default="heuristic")
    p.add_argument("--endgame-threshold", type=int, default=0,
                   help="omit records with at most this many empty squares")
    p.add_argument("--tt-capacity", type=int, default=None)
    p.add_argument("--out", help="store file to write")
    p.add_argument("--trace", action="store_true",
                   help="log one line per solved P/A'/P' record")
    p.set_defaults(func=cmd_solve_semistrong)

    p = sub.add_parser("census", help="unique visited/reachable positions per disc count")
    add_size(p)
    p.add_argument("--algo", choices=("ab", "reab", "exhaustive"), required=True)
    p.add_argument("--max-discs", type=int, default=None)
    p.add_argument("--chunk-size", type=int, default=1 << 20)
    p.add_argument("--spill-dir", default=None)
    p.add_argument("--ordering", choices=("heuristic", "oracle-optimal"),
                   default="heuristic")
    p.add_argument("--include-tt-hits", action="store_true")
    p.add_argument("--key-limit", type=int, default=None)
    p.add_argument("--out", help="TSV output path (stdout when omitted)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("theory", help="node-count table for synthetic uniform trees")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("verify", help="check a store against the brute-force oracle")
    p.add_argument("--db", required=True)
    p.add_argument("--position")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="store records as TSV")
    p.add_argument("--db", required=True)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("serve", help="perfect-play HTTP JSON API")
    p.add_argument("--db", default=os.environ.get(DEFAULT_DB_ENV))
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("play", help="play against the stored solution in the terminal")
    p.add_argument("--db", default=os.environ.get(DEFAULT_DB_ENV))
    p.add_argument("--color", choices=("black", "white"), default="black")
    p.set_defaults(func=cmd_play)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("serve", "play") and not args.db:
        print(f"--db or ${DEFAULT_DB_ENV} required", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (StoreFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
