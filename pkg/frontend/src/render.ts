/**
 * Figure rendering: PlotSpec in, PNG bytes out.
 *
 * Kinds:
 *   signmap   tan/blue/gray classification image from a sign PGM
 *   heatmap   sequential colormap of the conformal factor from a field CSV
 *   surface   isometric height view of the same field, painter's order
 *   errvalley diverging map of the truncation indicator over (s, t),
 *             sentinels clipped to the finite color range
 *
 * Rendering is read-only and deterministic: the same inputs give the
 * same bytes, and titles/time annotations travel as PNG text chunks.
 */

import { writeFileSync } from "node:fs";

import { readErrmapCsv, readFieldCsv, readSignPgm } from "./artifacts.js";
import { SIGN_COLORS, diverging, normalize, viridis, type Rgb } from "./colormap.js";
import { encodePng } from "./png.js";
import { Raster } from "./raster.js";

export type PlotKind = "signmap" | "heatmap" | "surface" | "errvalley";

export interface PlotSpec {
  kind: PlotKind;
  input: string;
  output: string;
  title?: string;
  /** Pixel size of one lattice cell (signmap/heatmap/errvalley). */
  scale?: number;
}

const GRAY: Rgb = [128, 128, 128];

export function render(spec: PlotSpec): void {
  let image;
  switch (spec.kind) {
    case "signmap":
      image = renderSignmap(spec);
      break;
    case "heatmap":
      image = renderHeatmap(spec);
      break;
    case "surface":
      image = renderSurface(spec);
      break;
    case "errvalley":
      image = renderErrValley(spec);
      break;
    default:
      throw new Error(`unknown plot kind: ${(spec as PlotSpec).kind}`);
  }
  const texts: Record<string, string> = {};
  if (spec.title) texts.Title = spec.title;
  const meta = image.meta;
  if (meta.t !== undefined) texts.Comment = `t = ${meta.t}`;
  if (meta.hamiltonian !== undefined) texts.Source = meta.hamiltonian;
  writeFileSync(spec.output, encodePng(image.raster.toImage(), texts));
}

function autoScale(size: number, target = 400): number {
  return Math.max(1, Math.round(target / size));
}

function renderSignmap(spec: PlotSpec) {
  const grid = readSignPgm(spec.input);
  const scale = spec.scale ?? autoScale(grid.size);
  const raster = new Raster(grid.size * scale, grid.size * scale);
  for (let row = 0; row < grid.size; row++) {
    for (let col = 0; col < grid.size; col++) {
      const color = SIGN_COLORS[grid.levels[row][col]];
      if (color === undefined) {
        throw new Error(`unexpected gray level ${grid.levels[row][col]}`);
      }
      raster.block(col * scale, row * scale, scale, scale, color);
    }
  }
  return { raster, meta: grid.meta };
}

function renderHeatmap(spec: PlotSpec) {
  const field = readFieldCsv(spec.input);
  const finite: number[] = [];
  for (let i = 0; i < field.size; i++) {
    for (let j = 0; j < field.size; j++) {
      if (!field.blowup[i][j] && Number.isFinite(field.h[i][j])) {
        finite.push(field.h[i][j]);
      }
    }
  }
  const lo = Math.min(...finite);
  const hi = Math.max(...finite);
  const scale = spec.scale ?? autoScale(field.size);
  const raster = new Raster(field.size * scale, field.size * scale);
  for (let i = 0; i < field.size; i++) {
    for (let j = 0; j < field.size; j++) {
      const color = field.blowup[i][j]
        ? GRAY
        : viridis(normalize(field.h[i][j], lo, hi));
      // x runs rightward, y downward: column i, row j
      raster.block(i * scale, j * scale, scale, scale, color);
    }
  }
  return { raster, meta: field.meta };
}

function renderErrValley(spec: PlotSpec) {
  const errmap = readErrmapCsv(spec.input);
  const finite = errmap.values.flat().filter(Number.isFinite);
  const lo = Math.min(...finite);
  const hi = Math.max(...finite);
  const cell = spec.scale ?? 8;
  // columns follow t (the transverse axis), rows follow s
  const raster = new Raster(errmap.t.length * cell, errmap.s.length * cell);
  for (let si = 0; si < errmap.s.length; si++) {
    for (let ti = 0; ti < errmap.t.length; ti++) {
      const value = errmap.values[si][ti];
      const clipped = value === -Infinity ? lo : value === Infinity ? hi : value;
      raster.block(
        ti * cell,
        si * cell,
        cell,
        cell,
        diverging(normalize(clipped, lo, hi)),
      );
    }
  }
  return { raster, meta: errmap.meta };
}

function renderSurface(spec: PlotSpec) {
  const field = readFieldCsv(spec.input);
  const size = field.size;
  const finite: number[] = [];
  for (const row of field.h) {
    for (const v of row) if (Number.isFinite(v)) finite.push(v);
  }
  const lo = Math.min(...finite);
  const hi = Math.max(...finite);
  const span = hi > lo ? hi - lo : 1;
  const width = 640;
  const height = 480;
  const raster = new Raster(width, height);
  // isometric projection: u spans the diagonal, v mixes the other
  // diagonal with height
  const ux = (width - 40) / (2 * (size - 1));
  const vy = (height - 120) / (2 * (size - 1));
  const zScale = 180;
  const project = (i: number, j: number, z: number): [number, number] => {
    const zn = (z - lo) / span;
    return [
      20 + (i + j) * ux,
      height - 60 - (i - j + (size - 1)) * vy - zn * zScale + 120,
    ];
  };
  const clampZ = (v: number): number =>
    Number.isFinite(v) ? Math.min(hi, Math.max(lo, v)) : hi;
  // painter's order: back to front along increasing i+j is wrong for
  // this projection; depth grows with (i - j), so sort quads by it
  const quads: Array<{ depth: number; i: number; j: number }> = [];
  for (let i = 0; i < size - 1; i++) {
    for (let j = 0; j < size - 1; j++) {
      quads.push({ depth: i - j, i, j });
    }
  }
  quads.sort((a, b) => b.depth - a.depth);
  for (const { i, j } of quads) {
    const z00 = clampZ(field.h[i][j]);
    const z10 = clampZ(field.h[i + 1][j]);
    const z11 = clampZ(field.h[i + 1][j + 1]);
    const z01 = clampZ(field.h[i][j + 1]);
    const zMean = (z00 + z10 + z11 + z01) / 4;
    const base = viridis(normalize(zMean, lo, hi));
    // cheap slope shading from the z gradient across the quad
    const shade = Math.max(
      0.6,
      Math.min(1.15, 1 - ((z10 + z11 - z00 - z01) / (2 * span)) * 0.8),
    );
    const color: Rgb = [
      Math.min(255, Math.round(base[0] * shade)),
      Math.min(255, Math.round(base[1] * shade)),
      Math.min(255, Math.round(base[2] * shade)),
    ];
    raster.fillPolygon(
      [
        project(i, j, z00),
        project(i + 1, j, z10),
        project(i + 1, j + 1, z11),
        project(i, j + 1, z01),
      ],
      color,
    );
  }
  return { raster, meta: field.meta };
}
