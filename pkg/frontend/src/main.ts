// DOM wiring. Single-threaded event loop, at most one in-flight API
// request; the board ignores clicks while awaiting the AI.

import { ApiError } from "./api.js";
import { UiGameState, aiStep, newGame, playTurn, undo } from "./game.js";
import { render } from "./render.js";
import { BoardSize, Player } from "./rules.js";

const DEFAULT_API = "http://127.0.0.1:8000";

let state: UiGameState;
let inFlight = false;

function el(id: string): HTMLElement {
    return document.getElementById(id) as HTMLElement;
}

function apiBase(): string {
    return (el("api-url") as HTMLInputElement).value || DEFAULT_API;
}

function draw(): void {
    el("game").innerHTML = render(state);
    for (const cell of document.querySelectorAll<HTMLElement>("td.legal")) {
        cell.addEventListener("click", () => onHumanMove(cell.dataset.move as string));
    }
}

async function withRequest(step: () => Promise<UiGameState>): Promise<void> {
    if (inFlight) return;
    inFlight = true;
    draw();
    try {
        state = await step();
    } catch (err) {
        if (err instanceof ApiError) {
            state = { ...state, phase: "error", message: `${err.message} (press New Game to retry)` };
        } else {
            throw err;
        }
    } finally {
        inFlight = false;
    }
    draw();
}

function onHumanMove(move: string): void {
    if (state.phase !== "human") return;
    void withRequest(() => playTurn(state, move, apiBase()));
}

function start(): void {
    const size = Number((el("size") as HTMLSelectElement).value) as BoardSize;
    const color = Number((el("color") as HTMLSelectElement).value) as Player;
    state = newGame(size, color);
    if (state.phase === "awaiting-ai") {
        void withRequest(async () => {
            let s = state;
            while (s.phase === "awaiting-ai") s = await aiStep(s, apiBase());
            return s;
        });
    } else {
        draw();
    }
}

function onUndo(): void {
    if (inFlight) return;
    state = undo(state);
    draw();
}

document.addEventListener("DOMContentLoaded", () => {
    el("new-game").addEventListener("click", start);
    el("undo").addEventListener("click", onUndo);
    start();
});
