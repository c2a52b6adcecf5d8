// Pure rendering: UiGameState in, HTML string out. main.ts owns the DOM.

import { UiGameState, aiColor, valueBanner } from "./game.js";
import { countDiscs, legalMoves, moveToText } from "./rules.js";

const COLOR_NAME = { 1: "Black", 2: "White" } as const;

export function renderBoard(state: UiGameState): string {
    const size = state.size;
    const canPlay = state.phase === "human";
    const legal = new Set(
        canPlay
            ? legalMoves(state.board, state.humanColor).map(([r, c]) => moveToText(r, c))
            : []
    );
    const rows: string[] = [];
    for (let r = 0; r < size; r++) {
        const cells: string[] = [];
        for (let c = 0; c < size; c++) {
            const cell = state.board[r][c];
            const name = moveToText(r, c);
            const classes = ["cell"];
            let content = "";
            if (cell === 1) content = '<span class="disc black"></span>';
            else if (cell === 2) content = '<span class="disc white"></span>';
            else if (legal.has(name)) classes.push("legal");
            cells.push(
                `<td class="${classes.join(" ")}" data-move="${name}">${content}</td>`
            );
        }
        rows.push(`<tr>${cells.join("")}</tr>`);
    }
    return `<table class="board">${rows.join("")}</table>`;
}

export function renderStatus(state: UiGameState): string {
    const { black, white } = countDiscs(state.board);
    const counts = `Black ${black} : ${white} White`;
    const you = `you are ${COLOR_NAME[state.humanColor]}, `
        + `AI is ${COLOR_NAME[aiColor(state)]}`;
    let turn: string;
    switch (state.phase) {
        case "human": turn = "your move"; break;
        case "awaiting-ai": turn = "AI thinking"; break;
        case "over": turn = state.message; break;
        case "error": turn = state.message; break;
    }
    const banner = valueBanner(state);
    return [
        `<div class="counts">${counts}</div>`,
        `<div class="colors">${you}</div>`,
        `<div class="turn">${turn}</div>`,
        banner ? `<div class="banner">${banner}</div>` : "",
    ].join("");
}

export function renderHistory(state: UiGameState): string {
    if (state.history.length === 0) return '<div class="history">(no moves)</div>';
    const items = state.history
        .map((e, i) => `${i + 1}. ${COLOR_NAME[e.player]} ${e.move}`)
        .join(" ");
    return `<div class="history">${items}</div>`;
}

export function render(state: UiGameState): string {
    return renderStatus(state) + renderBoard(state) + renderHistory(state);
}
