/**
 * Readers for the pipeline's artifact formats.
 *
 * Every artifact starts with `#`-prefixed `key: value` metadata (for PGM
 * the block sits after the mandatory "P2" magic).  Readers are strict:
 * a missing header or a size mismatch is an error, because silently
 * guessing grid shapes produces convincing but wrong figures.
 */

import { readFileSync } from "node:fs";

export interface Metadata {
  [key: string]: string;
}

export interface FieldGrid {
  size: number;
  /** re_h indexed [i][j] with x on the first axis, like the CSV order. */
  h: number[][];
  blowup: boolean[][];
  meta: Metadata;
}

export interface ErrMap {
  s: number[];
  t: number[];
  /** indicator indexed [si][ti]; sentinels arrive as +-Infinity. */
  values: number[][];
  meta: Metadata;
}

export interface SignGrid {
  size: number;
  /** PGM gray levels indexed [row=y][col=x]. */
  levels: number[][];
  meta: Metadata;
}

function parseFloatToken(token: string): number {
  if (token === "-inf") return -Infinity;
  if (token === "+inf" || token === "inf") return Infinity;
  const value = Number(token);
  if (Number.isNaN(value)) {
    throw new Error(`not a number: ${token}`);
  }
  return value;
}

function splitHeader(lines: string[]): { meta: Metadata; body: string[] } {
  const meta: Metadata = {};
  const body: string[] = [];
  let sawMeta = false;
  for (const line of lines) {
    if (line.startsWith("#")) {
      const text = line.slice(1).trim();
      const sep = text.indexOf(":");
      if (sep > 0) {
        meta[text.slice(0, sep).trim()] = text.slice(sep + 1).trim();
        sawMeta = true;
      }
    } else if (line.trim() !== "") {
      body.push(line.trim());
    }
  }
  if (!sawMeta) {
    throw new Error("missing metadata header (# key: value lines)");
  }
  return { meta, body };
}

export function readFieldCsv(path: string): FieldGrid {
  const { meta, body } = splitHeader(readFileSync(path, "utf8").split("\n"));
  if (body[0] !== "x,y,re_h,im_residual,denom_abs,blowup") {
    throw new Error(`unexpected field CSV header: ${body[0]}`);
  }
  const size = Number(meta.grid);
  if (!Number.isInteger(size) || size < 2) {
    throw new Error(`bad or missing grid size in metadata: ${meta.grid}`);
  }
  const rows = body.slice(1);
  if (rows.length !== size * size) {
    throw new Error(
      `dimension mismatch: grid ${size} needs ${size * size} rows, got ${rows.length}`,
    );
  }
  const h: number[][] = [];
  const blowup: boolean[][] = [];
  for (let i = 0; i < size; i++) {
    h.push(new Array<number>(size));
    blowup.push(new Array<boolean>(size));
    for (let j = 0; j < size; j++) {
      const cells = rows[i * size + j].split(",");
      h[i][j] = parseFloatToken(cells[2]);
      blowup[i][j] = cells[5] === "1";
    }
  }
  return { size, h, blowup, meta };
}

export function readErrmapCsv(path: string): ErrMap {
  const { meta, body } = splitHeader(readFileSync(path, "utf8").split("\n"));
  if (body[0] !== "s,t,indicator") {
    throw new Error(`unexpected errmap CSV header: ${body[0]}`);
  }
  const sVals: number[] = [];
  const tVals: number[] = [];
  const cells: number[][] = [];
  for (const row of body.slice(1)) {
    const [s, t, v] = row.split(",");
    cells.push([Number(s), Number(t), parseFloatToken(v)]);
  }
  for (const [s] of cells) {
    if (sVals.length === 0 || s !== sVals[sVals.length - 1]) sVals.push(s);
  }
  const sCount = sVals.length;
  const tCount = cells.length / sCount;
  if (!Number.isInteger(tCount)) {
    throw new Error("errmap rows do not form a complete s-by-t grid");
  }
  for (let k = 0; k < tCount; k++) tVals.push(cells[k][1]);
  const values: number[][] = [];
  for (let i = 0; i < sCount; i++) {
    values.push(cells.slice(i * tCount, (i + 1) * tCount).map((c) => c[2]));
  }
  return { s: sVals, t: tVals, values, meta };
}

export function readSignPgm(path: string): SignGrid {
  const lines = readFileSync(path, "utf8").split("\n");
  if (lines[0].trim() !== "P2") {
    throw new Error("not a plain (P2) PGM file");
  }
  const meta: Metadata = {};
  const tokens: number[] = [];
  for (const line of lines.slice(1)) {
    if (line.startsWith("#")) {
      const text = line.slice(1).trim();
      const sep = text.indexOf(":");
      if (sep > 0) meta[text.slice(0, sep).trim()] = text.slice(sep + 1).trim();
      continue;
    }
    for (const tok of line.trim().split(/\s+/)) {
      if (tok !== "") tokens.push(Number(tok));
    }
  }
  const [width, height, maxval] = tokens;
  if (maxval !== 255) {
    throw new Error(`expected maxval 255, got ${maxval}`);
  }
  if (width !== height) {
    throw new Error(`expected a square raster, got ${width}x${height}`);
  }
  const data = tokens.slice(3);
  if (data.length !== width * height) {
    throw new Error(
      `dimension mismatch: ${width}x${height} needs ${width * height} samples, got ${data.length}`,
    );
  }
  const levels: number[][] = [];
  for (let r = 0; r < height; r++) {
    levels.push(data.slice(r * width, (r + 1) * width));
  }
  return { size: width, levels, meta };
}
