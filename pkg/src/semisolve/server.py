"""Stateless perfect-play HTTP API over a solution store.

GET /api/v1/answer?size=6&mover=<hex16>&opp=<hex16> -> JSON with fields
value, bestMove, legalMoves, status, finalScore; GET /healthz -> ok.
The client owns all game state; identical queries yield identical answers.
"""
from __future__ import annotations

import re
from typing import Optional

from fastapi import FastAPI, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import board
from .board import Position, StatusKind
from .store import Store

HEX16 = re.compile(r"^[0-9a-fA-F]{1,16}$")


def answer_for(store: Store, p: Position) -> dict:
    status = board.move_status(p)
    if status.kind is StatusKind.TERMINAL:
        score = board.score_if_terminal(p)
        return {"value": score, "bestMove": None, "legalMoves": [],
                "status": "terminal", "finalScore": score}
    legal = [board.move_to_text(m, p.size) for m in status.moves]
    if status.kind is StatusKind.MUST_PASS:
        swapped = store.lookup(p.swap())
        if swapped.status == "not-covered":
            return {"value": None, "bestMove": board.PASS_TEXT, "legalMoves": [],
                    "status": "not-covered", "finalScore": None}
        return {"value": -swapped.value, "bestMove": board.PASS_TEXT, "legalMoves": [],
                "status": swapped.status, "finalScore": None}
    ans = store.lookup(p)
    if ans.status == "not-covered":
        return {"value": None, "bestMove": None, "legalMoves": legal,
                "status": "not-covered", "finalScore": None}
    best = board.move_to_text(ans.best_move, p.size) if ans.best_move is not None else None
    return {"value": ans.value, "bestMove": best, "legalMoves": legal,
            "status": ans.status, "finalScore": None}


def create_app(store: Store) -> FastAPI:
    app = FastAPI(title="semisolve perfect-play API")
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["GET"],
                       allow_headers=["*"])

    @app.get("/healthz")
    def healthz():
        return JSONResponse({"status": "ok", "size": store.size,
                             "records": store.count})

    @app.get("/api/v1/answer")
    def answer(size: int = Query(...), mover: str = Query(...),
               opp: str = Query(...)):
        if size != store.size:
            return JSONResponse({"error": f"store serves size {store.size}"},
                                status_code=400)
        if not HEX16.match(mover) or not HEX16.match(opp):
            return JSONResponse({"error": "mover/opp must be hex bitboards"},
                                status_code=400)
        try:
            p = Position(int(mover, 16), int(opp, 16), size)
        except ValueError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return JSONResponse(answer_for(store, p))

    return app


def serve(db_path: str, port: int = 8000, host: str = "127.0.0.1",
          ondemand_solver=None):
    import uvicorn
    store = Store(db_path, ondemand_solver=ondemand_solver)
    app = create_app(store)
    uvicorn.run(app, host=host, port=port, log_level="warning")
