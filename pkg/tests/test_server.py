"""HTTP API tests over a 4x4 store using the in-process test client."""
import random

import pytest
from fastapi.testclient import TestClient

from semisolve import board
from semisolve.board import Position, StatusKind
from semisolve.search import semi_strong_solve
from semisolve.server import create_app
from semisolve.store import Store, write_store
from conftest import playout_to_empties, random_playout_positions

FIELDS = {"value", "bestMove", "legalMoves", "status", "finalScore"}


@pytest.fixture(scope="module")
def client(tmp_path_factory):
    path = str(tmp_path_factory.mktemp("srv") / "solution4.ssdb")
    write_store(path, semi_strong_solve(board.initial_position(4),
                                        endgame_threshold=3))
    return TestClient(create_app(Store(path)))


def get(client, p):
    return client.get("/api/v1/answer", params={
        "size": p.size, "mover": f"{p.mover:016x}", "opp": f"{p.opponent:016x}"})


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok" and body["size"] == 4 and body["records"] > 0


def test_root_answer_shape_and_value(client, oracle4):
    p = board.initial_position(4)
    r = get(client, p)
    assert r.status_code == 200
    body = r.json()
    assert set(body) == FIELDS
    assert body["status"] == "covered"
    assert body["value"] == oracle4.value_of(p)
    assert body["bestMove"] in body["legalMoves"]
    assert body["finalScore"] is None
    assert sorted(body["legalMoves"]) == sorted(
        board.move_to_text(m, 4) for m in board.move_status(p).moves)


def test_idempotent_answers(client):
    p = board.initial_position(4)
    assert get(client, p).json() == get(client, p).json()


def test_covered_positions_are_exact(client, oracle4):
    rng = random.Random(20)
    for _ in range(25):
        p = playout_to_empties(4, rng.randint(1, 9), rng)
        body = get(client, p).json()
        assert body["status"] in ("covered", "on-demand", "not-covered")
        if body["status"] == "not-covered":
            continue
        assert body["value"] == oracle4.value_of(p)
        if body["bestMove"] is not None:
            assert body["bestMove"] in body["legalMoves"]


def test_must_pass_answer(client, oracle4):
    passes = [p for p in random_playout_positions(4, 400, seed=8)
              if board.move_status(p).kind is StatusKind.MUST_PASS]
    assert passes
    seen_value = False
    for p in passes[:10]:
        body = get(client, p).json()
        assert body["bestMove"] == "ps"
        assert body["legalMoves"] == []
        if body["status"] != "not-covered":
            assert body["value"] == oracle4.value_of(p)
            seen_value = True
    assert seen_value


def test_terminal_answer(client):
    full = (1 << 16) - 1
    p = Position(full ^ 3, 3, 4)
    body = get(client, p).json()
    assert body["status"] == "terminal"
    assert body["finalScore"] == board.score_if_terminal(p)
    assert body["value"] == body["finalScore"]
    assert body["bestMove"] is None and body["legalMoves"] == []


def test_malformed_hex_rejected(client):
    r = client.get("/api/v1/answer",
                   params={"size": 4, "mover": "xyz", "opp": "0"})
    assert r.status_code == 400
    assert "error" in r.json()


def test_overlapping_boards_rejected(client):
    r = client.get("/api/v1/answer",
                   params={"size": 4, "mover": "3", "opp": "1"})
    assert r.status_code == 400


def test_wrong_size_rejected(client):
    r = client.get("/api/v1/answer",
                   params={"size": 6, "mover": "0", "opp": "0"})
    assert r.status_code == 400


def test_missing_params_rejected(client):
    r = client.get("/api/v1/answer", params={"size": 4})
    assert r.status_code == 422
