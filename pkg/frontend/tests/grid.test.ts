import { describe, expect, it } from "vitest";

import {
  anyRepairs,
  cycleCell,
  EMPTY,
  gridsEqual,
  gridToText,
  RANDOM,
  setCell,
  templateGrid,
  textToGrid,
} from "../src/grid";

const INDEX_CHARS = [..."123456789A"];

describe("textToGrid repair mirroring", () => {
  it("pads short lines and flags the padding", () => {
    const grid = textToGrid("0*1\n2")!;
    expect(grid.rows).toBe(2);
    expect(grid.cols).toBe(3);
    expect(grid.cells).toEqual([
      ["0", "*", "1"],
      ["2", "0", "0"],
    ]);
    expect(grid.repaired[0]).toEqual([false, false, false]);
    expect(grid.repaired[1]).toEqual([false, true, true]); // padded cells flagged
  });

  it("truncates long lines to the first line's width", () => {
    const grid = textToGrid("00\n0000")!;
    expect(grid.cols).toBe(2);
    expect(grid.cells[1]).toEqual(["0", "0"]);
  });

  it("treats blank lines as empty rows", () => {
    const grid = textToGrid("12345\n\n*")!;
    expect(grid.rows).toBe(3);
    expect(grid.cells[1]).toEqual(["0", "0", "0", "0", "0"]);
    expect(grid.cells[2]).toEqual(["*", "0", "0", "0", "0"]);
  });

  it("maps unknown characters to random and flags them", () => {
    const grid = textToGrid("x!\n*1")!;
    expect(grid.cells[0]).toEqual(["*", "*"]);
    expect(grid.repaired[0]).toEqual([true, true]);
    expect(anyRepairs(grid)).toBe(true);
  });

  it("reads o and O as empty without flagging", () => {
    const grid = textToGrid("oO\n00")!;
    expect(grid.cells[0]).toEqual(["0", "0"]);
    expect(anyRepairs(grid)).toBe(false);
  });

  it("returns null for empty configurations", () => {
    expect(textToGrid("")).toBeNull();
    expect(textToGrid("\n111")).toBeNull();
  });

  it("ignores a single trailing newline", () => {
    expect(textToGrid("01\n")!.rows).toBe(1);
    expect(textToGrid("01\n\n")!.rows).toBe(2);
  });
});

describe("paint/text round trips", () => {
  it("acceptance: paint -> text -> paint is lossless on a 10x10 grid", () => {
    let grid = templateGrid(10, 10);
    // paint a spread of cells through the real cycle operation
    for (let r = 0; r < 10; r++) {
      for (let c = 0; c < 10; c++) {
        let clicks = (r * 10 + c) % 12; // covers empty, random, every module
        for (let k = 0; k < clicks; k++) {
          grid = setCell(grid, r, c, cycleCell(grid.cells[r][c], INDEX_CHARS));
        }
      }
    }
    const text = gridToText(grid);
    const reparsed = textToGrid(text)!;
    expect(gridsEqual(grid, reparsed)).toBe(true);
    expect(anyRepairs(reparsed)).toBe(false); // canonical text needs no repairs
    expect(gridToText(reparsed)).toBe(text);
  });

  it("canonical serialization is newline-terminated", () => {
    const grid = templateGrid(2, 3);
    expect(gridToText(grid)).toBe("000\n000\n");
  });
});

describe("cycleCell", () => {
  it("cycles empty -> random -> modules -> empty", () => {
    let value = EMPTY;
    const seen = [value];
    for (let i = 0; i < INDEX_CHARS.length + 2; i++) {
      value = cycleCell(value, INDEX_CHARS);
      seen.push(value);
    }
    expect(seen).toEqual([EMPTY, RANDOM, ...INDEX_CHARS, EMPTY]);
  });

  it("handles an empty palette by falling back to empty", () => {
    expect(cycleCell(RANDOM, [])).toBe(EMPTY);
  });

  it("recovers from a char outside the palette", () => {
    expect(cycleCell("Z", INDEX_CHARS)).toBe(EMPTY);
  });
});
