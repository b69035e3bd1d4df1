#!/usr/bin/env node
/**
 * kgflow-plot --kind signmap|heatmap|surface|errvalley \
 *             --input artifact.(pgm|csv) --output figure.png \
 *             [--title text] [--scale n]
 */

import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { render, type PlotKind } from "./render.js";

const KINDS: PlotKind[] = ["signmap", "heatmap", "surface", "errvalley"];

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        input: { type: "string" },
        output: { type: "string" },
        title: { type: "string" },
        scale: { type: "string" },
      },
    }));
  } catch (err) {
    console.error(`kgflow-plot: ${(err as Error).message}`);
    return 2;
  }
  const kind = values.kind as PlotKind | undefined;
  if (!kind || !KINDS.includes(kind) || !values.input || !values.output) {
    console.error(
      `usage: kgflow-plot --kind ${KINDS.join("|")} --input FILE --output PNG`,
    );
    return 2;
  }
  try {
    render({
      kind,
      input: values.input,
      output: values.output,
      title: values.title,
      scale: values.scale === undefined ? undefined : Number(values.scale),
    });
  } catch (err) {
    console.error(`kgflow-plot: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

if (import.meta.url === pathToFileURL(process.argv[1] ?? "").href) {
  process.exit(main(process.argv.slice(2)));
}
