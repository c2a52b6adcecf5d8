// Client-side Othello rules. The server is the authority; these exist for
// legal-move highlighting and local state, and every ply is cross-checked
// against the server's legalMoves list.

export type Player = 1 | 2; // 1 = Black (moves first), 2 = White
export type Cell = Player | 0;
export type BoardState = Cell[][];
export type BoardSize = 4 | 6;

const DIRECTIONS = [
    [-1, -1], [-1, 0], [-1, 1],
    [0, -1], [0, 1],
    [1, -1], [1, 0], [1, 1],
];

export function opponentOf(player: Player): Player {
    return player === 1 ? 2 : 1;
}

export function createInitialBoard(size: BoardSize): BoardState {
    const board: BoardState = Array.from({ length: size }, () =>
        Array(size).fill(0)
    );
    const h = size / 2;
    // White on the main diagonal of the centre block, Black off it
    board[h - 1][h - 1] = 2;
    board[h][h] = 2;
    board[h - 1][h] = 1;
    board[h][h - 1] = 1;
    return board;
}

export function flipsForMove(
    board: BoardState, row: number, col: number, player: Player
): Array<[number, number]> {
    const size = board.length;
    if (board[row][col] !== 0) return [];
    const opponent = opponentOf(player);
    const flips: Array<[number, number]> = [];
    for (const [dr, dc] of DIRECTIONS) {
        const run: Array<[number, number]> = [];
        let r = row + dr;
        let c = col + dc;
        while (r >= 0 && r < size && c >= 0 && c < size && board[r][c] === opponent) {
            run.push([r, c]);
            r += dr;
            c += dc;
        }
        if (run.length > 0 && r >= 0 && r < size && c >= 0 && c < size
            && board[r][c] === player) {
            flips.push(...run);
        }
    }
    return flips;
}

export function isValidMove(
    board: BoardState, row: number, col: number, player: Player
): boolean {
    return flipsForMove(board, row, col, player).length > 0;
}

export function legalMoves(board: BoardState, player: Player): Array<[number, number]> {
    const size = board.length;
    const moves: Array<[number, number]> = [];
    for (let r = 0; r < size; r++) {
        for (let c = 0; c < size; c++) {
            if (isValidMove(board, r, c, player)) moves.push([r, c]);
        }
    }
    return moves;
}

export function applyMove(
    board: BoardState, row: number, col: number, player: Player
): BoardState {
    const flips = flipsForMove(board, row, col, player);
    if (flips.length === 0) {
        throw new Error(`illegal move ${row},${col} for player ${player}`);
    }
    const next = board.map((rank) => rank.slice());
    next[row][col] = player;
    for (const [r, c] of flips) next[r][c] = player;
    return next;
}

export function countDiscs(board: BoardState): { black: number; white: number } {
    let black = 0;
    let white = 0;
    for (const rank of board) {
        for (const cell of rank) {
            if (cell === 1) black++;
            else if (cell === 2) white++;
        }
    }
    return { black, white };
}

export function isTerminal(board: BoardState): boolean {
    return legalMoves(board, 1).length === 0 && legalMoves(board, 2).length === 0;
}

// Disc difference with empty squares awarded to the winner, from `player`'s
// point of view (the server's scoring convention).
export function finalScore(board: BoardState, player: Player): number {
    const { black, white } = countDiscs(board);
    const empties = board.length * board.length - black - white;
    let diff = black - white;
    if (diff > 0) diff += empties;
    else if (diff < 0) diff -= empties;
    return player === 1 ? diff : -diff;
}

// --- server notation ---------------------------------------------------

// Bitboards are row-major with a1 (row 0, col 0) at bit 0.
export function boardMask(board: BoardState, player: Player): bigint {
    const size = board.length;
    let mask = 0n;
    for (let r = 0; r < size; r++) {
        for (let c = 0; c < size; c++) {
            if (board[r][c] === player) mask |= 1n << BigInt(r * size + c);
        }
    }
    return mask;
}

export function maskHex(mask: bigint): string {
    return mask.toString(16).padStart(16, "0");
}

export function moveToText(row: number, col: number): string {
    return String.fromCharCode(97 + col) + String(row + 1);
}

export function textToMove(text: string): [number, number] {
    const col = text.charCodeAt(0) - 97;
    const row = parseInt(text.slice(1), 10) - 1;
    return [row, col];
}

export const PASS_TEXT = "ps";
