// Thin client for the stateless perfect-play API.

import { BoardSize, BoardState, Player, boardMask, maskHex, opponentOf } from "./rules.js";

export interface ApiAnswer {
    value: number | null;
    bestMove: string | null;
    legalMoves: string[];
    status: "covered" | "on-demand" | "not-covered" | "terminal";
    finalScore: number | null;
}

export class ApiError extends Error {
    constructor(message: string, public status?: number) {
        super(message);
    }
}

export async function fetchAnswer(
    baseUrl: string, size: BoardSize, board: BoardState, mover: Player
): Promise<ApiAnswer> {
    const params = new URLSearchParams({
        size: String(size),
        mover: maskHex(boardMask(board, mover)),
        opp: maskHex(boardMask(board, opponentOf(mover))),
    });
    let response: Response;
    try {
        response = await fetch(`${baseUrl}/api/v1/answer?${params}`);
    } catch (err) {
        throw new ApiError(`API unreachable: ${err}`);
    }
    if (!response.ok) {
        const body = await response.text();
        throw new ApiError(`API error ${response.status}: ${body}`, response.status);
    }
    return (await response.json()) as ApiAnswer;
}
