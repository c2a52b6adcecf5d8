import { describe, expect, it } from "vitest";

import type { ApiAnswer } from "../src/api.js";
import {
    UiGameState,
    aiStep,
    newGame,
    playTurn,
    replay,
    undo,
    valueBanner,
} from "../src/game.js";
import { render, renderBoard } from "../src/render.js";
import {
    BoardState,
    Player,
    boardMask,
    legalMoves,
    maskHex,
    moveToText,
} from "../src/rules.js";

// Fake server: answers from a scripted table keyed by mover/opp hex, or by
// computing a fixed policy (first legal move) when unscripted.
function fakeFetcher(policy: "first" | "last" = "first") {
    return async (
        _base: string, _size: 4 | 6, board: BoardState, mover: Player
    ): Promise<ApiAnswer> => {
        const moves = legalMoves(board, mover).map(([r, c]) => moveToText(r, c));
        if (moves.length === 0) {
            const other = mover === 1 ? 2 : 1;
            if (legalMoves(board, other).length === 0) {
                return { value: 0, bestMove: null, legalMoves: [], status: "terminal", finalScore: 0 };
            }
            return { value: 3, bestMove: "ps", legalMoves: [], status: "covered", finalScore: null };
        }
        const pick = policy === "first" ? moves[0] : moves[moves.length - 1];
        return { value: 2, bestMove: pick, legalMoves: moves, status: "covered", finalScore: null };
    };
}

describe("newGame", () => {
    it("starts with the human to move when the human is Black", () => {
        const s = newGame(4, 1);
        expect(s.phase).toBe("human");
        expect(s.toMove).toBe(1);
        expect(s.history).toEqual([]);
    });

    it("starts awaiting the AI when the human is White", () => {
        expect(newGame(4, 2).phase).toBe("awaiting-ai");
    });
});

describe("playTurn", () => {
    it("applies the human move then the AI reply", async () => {
        let s = newGame(4, 1);
        const move = moveToText(...(legalMoves(s.board, 1)[0]));
        s = await playTurn(s, move, "http://fake", fakeFetcher());
        expect(s.history.length).toBeGreaterThanOrEqual(2);
        expect(s.history[0]).toEqual({ player: 1, move });
        expect(s.history[1].player).toBe(2);
        expect(s.phase === "human" || s.phase === "over").toBe(true);
        expect(s.assertedValues.length).toBeGreaterThan(0);
    });

    it("rejects illegal moves", async () => {
        const s = newGame(4, 1);
        await expect(playTurn(s, "a1", "http://fake", fakeFetcher())).rejects.toThrow(/illegal/);
    });

    it("rejects a pass while moves exist", async () => {
        const s = newGame(4, 1);
        await expect(playTurn(s, "ps", "http://fake", fakeFetcher())).rejects.toThrow(/cannot pass/);
    });

    it("plays a full random game to termination", async () => {
        let s = newGame(4, 1);
        let guard = 0;
        while (s.phase === "human" && guard++ < 40) {
            const moves = legalMoves(s.board, 1);
            if (moves.length === 0) {
                s = await playTurn(s, "ps", "http://fake", fakeFetcher());
                continue;
            }
            const move = moveToText(...(moves[0]));
            s = await playTurn(s, move, "http://fake", fakeFetcher());
        }
        expect(s.phase).toBe("over");
        expect(replay(s)).toEqual(s.board);
        expect(s.message).toMatch(/game over/);
    });

    it("keeps the history replayable at every step", async () => {
        let s = newGame(4, 1);
        while (s.phase === "human") {
            const moves = legalMoves(s.board, 1);
            const move = moves.length ? moveToText(...(moves[moves.length - 1])) : "ps";
            s = await playTurn(s, move, "http://fake", fakeFetcher("last"));
            expect(replay(s)).toEqual(s.board);
        }
    });
});

describe("rules divergence detection", () => {
    it("raises loudly when the server disagrees about legal moves", async () => {
        const lying = async (): Promise<ApiAnswer> => ({
            value: 0, bestMove: "a1", legalMoves: ["a1"], status: "covered", finalScore: null,
        });
        let s = newGame(4, 1);
        const move = moveToText(...(legalMoves(s.board, 1)[0]));
        await expect(playTurn(s, move, "http://fake", lying)).rejects.toThrow(/divergence/);
    });
});

describe("not-covered handling", () => {
    it("surfaces the guarantee boundary instead of guessing", async () => {
        const refusing = async (
            _b: string, _s: 4 | 6, board: BoardState, mover: Player
        ): Promise<ApiAnswer> => ({
            value: null,
            bestMove: null,
            legalMoves: legalMoves(board, mover).map(([r, c]) => moveToText(r, c)),
            status: "not-covered",
            finalScore: null,
        });
        let s = newGame(4, 1);
        const move = moveToText(...(legalMoves(s.board, 1)[0]));
        s = await playTurn(s, move, "http://fake", refusing);
        expect(s.phase).toBe("error");
        expect(s.message).toMatch(/guarantee/);
    });
});

describe("undo", () => {
    it("rewinds to the previous human decision point", async () => {
        let s = newGame(4, 1);
        const move = moveToText(...(legalMoves(s.board, 1)[0]));
        s = await playTurn(s, move, "http://fake", fakeFetcher());
        const rewound = undo(s);
        expect(rewound.history).toEqual([]);
        expect(rewound.board).toEqual(newGame(4, 1).board);
        expect(rewound.phase).toBe("human");
    });

    it("is a no-op on a fresh game", () => {
        const s = newGame(4, 1);
        expect(undo(s)).toEqual(s);
    });
});

describe("value banner", () => {
    it("is empty before any AI reply and set after", async () => {
        let s = newGame(4, 1);
        expect(valueBanner(s)).toBe("");
        const move = moveToText(...(legalMoves(s.board, 1)[0]));
        s = await playTurn(s, move, "http://fake", fakeFetcher());
        expect(valueBanner(s)).toMatch(/AI guarantees final score >= 2/);
    });
});

describe("rendering is pure", () => {
    it("same state renders to the same markup", () => {
        const s = newGame(6, 1);
        expect(render(s)).toBe(render(s));
        expect(renderBoard(s)).toContain('data-move="c2"');
        expect(renderBoard(s)).toContain("legal");
    });

    it("snapshot of the opening 4x4 screen", () => {
        expect(render(newGame(4, 1))).toMatchSnapshot();
    });

    it("does not offer moves while awaiting the AI", () => {
        const s: UiGameState = { ...newGame(4, 1), phase: "awaiting-ai" };
        expect(renderBoard(s)).not.toContain("legal");
    });
});

describe("bitboard interop stays in sync while playing", () => {
    it("mover/opp masks stay disjoint and within the board", async () => {
        let s = newGame(4, 1);
        while (s.phase === "human") {
            const black = boardMask(s.board, 1);
            const white = boardMask(s.board, 2);
            expect(black & white).toBe(0n);
            expect(maskHex(black).length).toBe(16);
            const moves = legalMoves(s.board, 1);
            const move = moves.length ? moveToText(...(moves[0])) : "ps";
            s = await playTurn(s, move, "http://fake", fakeFetcher());
        }
    });
});
