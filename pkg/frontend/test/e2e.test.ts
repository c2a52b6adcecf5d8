// End to end against the real server: build a 4x4 solution store, start
// `semisolve serve`, and play 100 scripted random-human games through the
// same state machine the browser uses.
//
// Checks, per game:
//   - the AI's realized final score is >= every value it asserted
//   - the asserted-value sequence is non-decreasing
import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { UiGameState, aiColor, aiStep, newGame, playTurn } from "../src/game.js";
import { finalScore, legalMoves, moveToText } from "../src/rules.js";

const PORT = 18731;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ReturnType<typeof spawn> | null = null;

function mulberry32(seed: number): () => number {
    return () => {
        seed |= 0;
        seed = (seed + 0x6d2b79f5) | 0;
        let t = Math.imul(seed ^ (seed >>> 15), 1 | seed);
        t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

async function waitForHealthy(timeoutMs: number): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        try {
            const r = await fetch(`${BASE}/healthz`);
            if (r.ok) return;
        } catch {
            // not up yet
        }
        await new Promise((res) => setTimeout(res, 250));
    }
    throw new Error("server did not become healthy in time");
}

beforeAll(async () => {
    const dir = mkdtempSync(join(tmpdir(), "semisolve-e2e-"));
    const db = join(dir, "solution4.ssdb");
    const solve = spawnSync("semisolve", [
        "solve-semistrong", "--size", "4", "--endgame-threshold", "3", "--out", db,
    ], { encoding: "utf8", timeout: 300_000 });
    if (solve.status !== 0) {
        throw new Error(`store build failed: ${solve.stderr}`);
    }
    server = spawn("semisolve", [
        "serve", "--db", db, "--port", String(PORT), "--host", "127.0.0.1",
    ], { stdio: "ignore" });
    await waitForHealthy(30_000);
}, 360_000);

afterAll(() => {
    server?.kill();
});

async function playRandomGame(seed: number, humanColor: 1 | 2): Promise<UiGameState> {
    const rand = mulberry32(seed);
    let s = newGame(4, humanColor);
    while (s.phase === "awaiting-ai") s = await aiStep(s, BASE);
    let guard = 0;
    while (s.phase === "human" && guard++ < 60) {
        const moves = legalMoves(s.board, humanColor);
        const move = moves.length === 0
            ? "ps"
            : moveToText(...moves[Math.floor(rand() * moves.length)]);
        s = await playTurn(s, move, BASE);
    }
    expect(s.phase).toBe("over");
    return s;
}

describe("100 scripted random games through the live API", () => {
    it("AI never under-delivers on an asserted value", async () => {
        let totalAsserts = 0;
        for (let g = 0; g < 100; g++) {
            const humanColor = g % 2 === 0 ? 1 : 2;
            const s = await playRandomGame(1000 + g, humanColor);
            const realized = finalScore(s.board, aiColor(s));
            for (const asserted of s.assertedValues) {
                expect(realized).toBeGreaterThanOrEqual(asserted);
            }
            for (let i = 1; i < s.assertedValues.length; i++) {
                expect(s.assertedValues[i]).toBeGreaterThanOrEqual(s.assertedValues[i - 1]);
            }
            totalAsserts += s.assertedValues.length;
        }
        expect(totalAsserts).toBeGreaterThan(100);
    }, 600_000);
});
