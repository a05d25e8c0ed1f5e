#!/usr/bin/env node
/**
 * dslab-fig <figure-spec.json>
 *
 * Renders one figure from simulator output files.  The spec names the figure
 * kind, the input paths, and the output PNG; rendering is deterministic and
 * nothing is written when validation fails (hash mismatch, empty inputs).
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { FigureSpec, renderFigure } from "./figures.js";

export function main(argv: string[]): number {
  if (argv.length !== 1) {
    process.stderr.write("usage: dslab-fig <figure-spec.json>\n");
    return 2;
  }
  let spec: FigureSpec;
  try {
    spec = JSON.parse(fs.readFileSync(argv[0], "utf-8"));
  } catch (err) {
    process.stderr.write(`error: cannot read spec: ${(err as Error).message}\n`);
    return 2;
  }
  const base = path.dirname(path.resolve(argv[0]));
  const resolve = (p: string) => (path.isAbsolute(p) ? p : path.join(base, p));
  const inputs: Record<string, string | string[]> = {};
  for (const [k, v] of Object.entries(spec.inputs ?? {})) {
    inputs[k] = Array.isArray(v) ? v.map(resolve) : resolve(v);
  }
  spec = { ...spec, inputs };
  try {
    const png = renderFigure(spec);
    const out = resolve(spec.output);
    fs.writeFileSync(out, png);
    process.stdout.write(`${out} (${png.length} bytes)\n`);
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

const isMain = process.argv[1] && path.resolve(process.argv[1]) === new URL(import.meta.url).pathname;
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
