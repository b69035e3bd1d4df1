import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "kgflow-plot-"));
}

const META = [
  "# version: 0.1.0",
  "# hamiltonian: test",
  "# order: 4",
].join("\n");

/** Small field CSV: h(i, j) from a callback, lattice corners i/size. */
export function fieldCsv(
  dir: string,
  size: number,
  h: (i: number, j: number) => number,
  blowup: (i: number, j: number) => boolean = () => false,
): string {
  const lines = [
    META,
    `# grid: ${size}`,
    "# t: 0.1",
    "# mode: rational",
    "x,y,re_h,im_residual,denom_abs,blowup",
  ];
  for (let i = 0; i < size; i++) {
    for (let j = 0; j < size; j++) {
      lines.push(
        `${i / size},${j / size},${h(i, j)},0,1,${blowup(i, j) ? 1 : 0}`,
      );
    }
  }
  const path = join(dir, "field.csv");
  writeFileSync(path, lines.join("\n") + "\n");
  return path;
}

/** Errmap CSV over given s and t samples. */
export function errmapCsv(
  dir: string,
  sVals: number[],
  tVals: number[],
  f: (s: number, t: number) => number,
): string {
  const lines = [META, "s,t,indicator"];
  for (const s of sVals) {
    for (const t of tVals) {
      const v = f(s, t);
      const text =
        v === -Infinity ? "-inf" : v === Infinity ? "+inf" : String(v);
      lines.push(`${s},${t},${text}`);
    }
  }
  const path = join(dir, "errmap.csv");
  writeFileSync(path, lines.join("\n") + "\n");
  return path;
}

/** Sign PGM with gray levels from a callback (values 0, 128, 255). */
export function signPgm(
  dir: string,
  size: number,
  level: (row: number, col: number) => number,
): string {
  const lines = ["P2", META, `${size} ${size}`, "255"];
  for (let row = 0; row < size; row++) {
    const cells: number[] = [];
    for (let col = 0; col < size; col++) cells.push(level(row, col));
    lines.push(cells.join(" "));
  }
  const path = join(dir, "sign.pgm");
  writeFileSync(path, lines.join("\n") + "\n");
  return path;
}
