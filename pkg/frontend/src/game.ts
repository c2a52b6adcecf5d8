// Game state machine. The client owns all game state; the server answers
// stateless position queries. Undo just truncates the move history and
// replays it, then re-queries the API for the value banner.

import { ApiAnswer, fetchAnswer } from "./api.js";
import {
    BoardSize,
    BoardState,
    PASS_TEXT,
    Player,
    applyMove,
    createInitialBoard,
    finalScore,
    isTerminal,
    legalMoves,
    moveToText,
    opponentOf,
    textToMove,
} from "./rules.js";

export type Phase = "human" | "awaiting-ai" | "over" | "error";

export interface HistoryEntry {
    player: Player;
    move: string; // "c4" or "ps"
}

export interface UiGameState {
    size: BoardSize;
    humanColor: Player;
    board: BoardState;
    toMove: Player;
    history: HistoryEntry[];
    lastAnswer: ApiAnswer | null;
    assertedValues: number[]; // AI perspective, one per AI reply with a value
    phase: Phase;
    message: string;
}

export function newGame(size: BoardSize, humanColor: Player): UiGameState {
    return {
        size,
        humanColor,
        board: createInitialBoard(size),
        toMove: 1,
        history: [],
        lastAnswer: null,
        assertedValues: [],
        phase: humanColor === 1 ? "human" : "awaiting-ai",
        message: "",
    };
}

export function aiColor(state: UiGameState): Player {
    return opponentOf(state.humanColor);
}

function applyEntry(board: BoardState, entry: HistoryEntry): BoardState {
    if (entry.move === PASS_TEXT) return board;
    const [r, c] = textToMove(entry.move);
    return applyMove(board, r, c, entry.player);
}

// Replaying the history must reproduce the current position exactly; this
// is the client-side invariant the tests snapshot.
export function replay(state: UiGameState): BoardState {
    let board = createInitialBoard(state.size);
    for (const entry of state.history) board = applyEntry(board, entry);
    return board;
}

function pushMove(state: UiGameState, player: Player, move: string): UiGameState {
    const board = move === PASS_TEXT
        ? state.board
        : (() => {
            const [r, c] = textToMove(move);
            return applyMove(state.board, r, c, player);
        })();
    return {
        ...state,
        board,
        toMove: opponentOf(player),
        history: [...state.history, { player, move }],
    };
}

function settle(state: UiGameState): UiGameState {
    if (isTerminal(state.board)) {
        const score = finalScore(state.board, state.humanColor);
        const outcome = score > 0 ? "you win" : score < 0 ? "you lose" : "draw";
        return { ...state, phase: "over", message: `game over: ${outcome} (${score >= 0 ? "+" : ""}${score})` };
    }
    return state;
}

export function crossCheckLegalMoves(state: UiGameState, answer: ApiAnswer): void {
    const mine = legalMoves(state.board, state.toMove)
        .map(([r, c]) => moveToText(r, c))
        .sort();
    const theirs = [...answer.legalMoves].sort();
    if (JSON.stringify(mine) !== JSON.stringify(theirs)) {
        throw new Error(
            `rules divergence: client ${JSON.stringify(mine)} vs server ${JSON.stringify(theirs)}`
        );
    }
}

// One full turn: apply the human's move, then let the AI answer (auto-playing
// passes on both sides) until it is the human's turn again or the game ends.
export async function playTurn(
    state: UiGameState, humanMove: string, baseUrl: string,
    fetcher = fetchAnswer
): Promise<UiGameState> {
    if (state.phase !== "human") throw new Error(`not the human's turn (${state.phase})`);
    const legal = legalMoves(state.board, state.humanColor).map(([r, c]) => moveToText(r, c));
    if (humanMove !== PASS_TEXT && !legal.includes(humanMove)) {
        throw new Error(`illegal move ${humanMove}`);
    }
    if (humanMove === PASS_TEXT && legal.length > 0) {
        throw new Error("cannot pass while moves exist");
    }
    let next = settle(pushMove(state, state.humanColor, humanMove));
    next = { ...next, phase: next.phase === "over" ? "over" : "awaiting-ai" };
    while (next.phase === "awaiting-ai") {
        next = await aiStep(next, baseUrl, fetcher);
    }
    return next;
}

// A single AI decision (or forced pass on either side).
export async function aiStep(
    state: UiGameState, baseUrl: string, fetcher = fetchAnswer
): Promise<UiGameState> {
    const ai = aiColor(state);
    if (state.toMove === state.humanColor) {
        if (legalMoves(state.board, state.humanColor).length > 0) {
            return { ...state, phase: "human" };
        }
        // human has no move: auto-pass back to the AI
        return settle(pushMove(state, state.humanColor, PASS_TEXT));
    }
    const answer = await fetcher(baseUrl, state.size, state.board, ai);
    if (answer.status === "terminal") {
        return settle({ ...state, lastAnswer: answer });
    }
    crossCheckLegalMoves(state, answer);
    if (answer.status === "not-covered") {
        return {
            ...state,
            lastAnswer: answer,
            phase: "error",
            message: "position is outside the stored semi-strong guarantee "
                + "(this should be unreachable through legal play in the UI)",
        };
    }
    const asserted = answer.value as number;
    const next: UiGameState = {
        ...state,
        lastAnswer: answer,
        assertedValues: [...state.assertedValues, asserted],
    };
    return settle(pushMove(next, ai, answer.bestMove as string));
}

// Undo to the previous human decision point; the caller re-queries the API
// afterwards if it wants a fresh value banner.
export function undo(state: UiGameState): UiGameState {
    if (state.history.length === 0) return state;
    const history = [...state.history];
    while (history.length > 0) {
        const last = history.pop() as HistoryEntry;
        if (last.player === state.humanColor && last.move !== PASS_TEXT) break;
    }
    let board = createInitialBoard(state.size);
    for (const entry of history) board = applyEntry(board, entry);
    return {
        ...state,
        board,
        toMove: state.humanColor,
        history,
        lastAnswer: null,
        phase: "human",
        message: "",
    };
}

export function valueBanner(state: UiGameState): string {
    const answer = state.lastAnswer;
    if (answer === null || answer.value === null) return "";
    if (answer.status === "terminal") return `final score ${answer.finalScore}`;
    // the value is from the mover's perspective at query time, i.e. the AI's
    const v = state.assertedValues[state.assertedValues.length - 1];
    return v >= 0 ? `AI guarantees final score >= ${v}` : `AI asserts value ${v}`;
}
