// Editing model for configuration text: a rectangular grid of canonical
// cell characters plus repair flags, kept in two-way sync with the text
// pane. The repair rules mirror the engine's parser (first line fixes the
// column count, long lines truncate, short lines pad, unknown characters
// read as '*', o/O read as empty) so highlights show exactly what the
// server will do with the text.

export const EMPTY = "0";
export const RANDOM = "*";

export interface GridModel {
  rows: number;
  cols: number;
  cells: string[][]; // canonical characters
  repaired: boolean[][]; // cell was padded in or rewritten by a repair rule
}

function isFixedChar(ch: string): boolean {
  return /^[1-9A-NP-Z]$/.test(ch); // 'O' is the empty alias, never a module
}

function canonical(ch: string): { value: string; repaired: boolean } {
  if (ch === "0") return { value: EMPTY, repaired: false };
  if (ch === "o" || ch === "O") return { value: EMPTY, repaired: false };
  if (ch === RANDOM) return { value: RANDOM, repaired: false };
  if (isFixedChar(ch)) return { value: ch, repaired: false };
  return { value: RANDOM, repaired: true }; // unknown character rule
}

function splitLines(text: string): string[] {
  const lines = text.split("\n");
  if (lines.length > 1 && lines[lines.length - 1] === "") lines.pop();
  return lines.map((ln) => (ln.endsWith("\r") ? ln.slice(0, -1) : ln));
}

/** Parse config text for editing; null when the text has no first line. */
export function textToGrid(text: string): GridModel | null {
  const lines = splitLines(text);
  if (lines.length === 0 || lines[0] === "") return null;
  const cols = lines[0].length;
  const cells: string[][] = [];
  const repaired: boolean[][] = [];
  for (const line of lines) {
    const row: string[] = [];
    const flags: boolean[] = [];
    for (const ch of line.slice(0, cols)) {
      const c = canonical(ch);
      row.push(c.value);
      flags.push(c.repaired);
    }
    while (row.length < cols) {
      row.push(EMPTY); // short line: padded cells are highlighted
      flags.push(true);
    }
    cells.push(row);
    repaired.push(flags);
  }
  return { rows: cells.length, cols, cells, repaired };
}

/** Canonical text for a grid; textToGrid round-trips it without repairs. */
export function gridToText(grid: GridModel): string {
  return grid.cells.map((row) => row.join("")).join("\n") + "\n";
}

export function templateGrid(rows: number, cols: number): GridModel {
  return {
    rows,
    cols,
    cells: Array.from({ length: rows }, () => Array(cols).fill(EMPTY)),
    repaired: Array.from({ length: rows }, () => Array(cols).fill(false)),
  };
}

/** Paint-mode click: empty -> random -> each module index -> empty. */
export function cycleCell(current: string, indexChars: string[]): string {
  if (current === EMPTY) return RANDOM;
  if (current === RANDOM) return indexChars.length > 0 ? indexChars[0] : EMPTY;
  const i = indexChars.indexOf(current);
  if (i === -1 || i === indexChars.length - 1) return EMPTY;
  return indexChars[i + 1];
}

/** Replace one cell, returning a new model with its repair flag cleared. */
export function setCell(grid: GridModel, row: number, col: number, value: string): GridModel {
  const cells = grid.cells.map((r) => [...r]);
  const repaired = grid.repaired.map((r) => [...r]);
  cells[row][col] = value;
  repaired[row][col] = false;
  return { rows: grid.rows, cols: grid.cols, cells, repaired };
}

export function gridsEqual(a: GridModel, b: GridModel): boolean {
  return (
    a.rows === b.rows &&
    a.cols === b.cols &&
    a.cells.every((row, r) => row.every((ch, c) => ch === b.cells[r][c]))
  );
}

export function anyRepairs(grid: GridModel): boolean {
  return grid.repaired.some((row) => row.some(Boolean));
}
