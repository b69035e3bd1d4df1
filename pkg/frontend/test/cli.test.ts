import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";
import { decodePng } from "../src/png.js";
import { signPgm, tempDir } from "./fixtures.js";

describe("command line", () => {
  it("renders a sign map end to end", () => {
    const dir = tempDir();
    const input = signPgm(dir, 5, (r, c) => (r < c ? 255 : 0));
    const output = join(dir, "out.png");
    const code = main([
      "--kind", "signmap", "--input", input, "--output", output,
      "--title", "demo", "--scale", "2",
    ]);
    expect(code).toBe(0);
    expect(existsSync(output)).toBe(true);
    const png = decodePng(readFileSync(output));
    expect(png.width).toBe(10);
    expect(png.texts.Title).toBe("demo");
  });

  it("exits 2 on usage errors", () => {
    expect(main([])).toBe(2);
    expect(main(["--kind", "nonsense", "--input", "a", "--output", "b"]))
      .toBe(2);
    expect(main(["--bogus"])).toBe(2);
  });

  it("exits 1 on unreadable inputs", () => {
    const dir = tempDir();
    expect(
      main([
        "--kind", "signmap",
        "--input", join(dir, "missing.pgm"),
        "--output", join(dir, "x.png"),
      ]),
    ).toBe(1);
  });
});
