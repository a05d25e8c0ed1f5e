/**
 * Readers for the simulator's documented output formats (FORMATS.md at the
 * repository root): the DSLAB1 binary field container, trajectory CSVs, the
 * trajectory-fan CSV, and two-column radial profile CSVs.  These parse the
 * byte layout directly; the figure tool never links against the simulator.
 */

import * as fs from "node:fs";

export interface AxisSpec {
  min: number;
  max: number;
  n: number;
}

export interface FieldContainer {
  axes: AxisSpec[];
  complex: boolean;
  dt: number;
  timeLabel: number;
  meta: Record<string, unknown>;
  /** real part (or the real payload), row-major */
  re: Float64Array;
  /** imaginary part; zeros for real payloads */
  im: Float64Array;
}

export function readField(path: string): FieldContainer {
  const buf = fs.readFileSync(path);
  if (buf.subarray(0, 6).toString("ascii") !== "DSLAB1") {
    throw new Error(`${path}: bad magic, not a DSLAB1 container`);
  }
  const complex = buf[6] === 1;
  const ndim = buf[7];
  const dt = buf.readDoubleLE(8);
  const timeLabel = buf.readDoubleLE(16);
  let off = 24;
  const axes: AxisSpec[] = [];
  for (let i = 0; i < ndim; i++) {
    const min = buf.readDoubleLE(off);
    const max = buf.readDoubleLE(off + 8);
    const n = Number(buf.readBigUInt64LE(off + 16));
    axes.push({ min, max, n });
    off += 24;
  }
  const mlen = buf.readUInt32LE(off);
  off += 4;
  const meta = mlen ? JSON.parse(buf.subarray(off, off + mlen).toString("utf-8")) : {};
  off += mlen;
  const count = axes.reduce((a, ax) => a * ax.n, 1);
  const re = new Float64Array(count);
  const im = new Float64Array(count);
  if (complex) {
    for (let i = 0; i < count; i++) {
      re[i] = buf.readDoubleLE(off + 16 * i);
      im[i] = buf.readDoubleLE(off + 16 * i + 8);
    }
  } else {
    for (let i = 0; i < count; i++) {
      re[i] = buf.readDoubleLE(off + 8 * i);
    }
  }
  return { axes, complex, dt, timeLabel, meta, re, im };
}

function parseHeaderComment(line: string): Record<string, string> {
  const meta: Record<string, string> = {};
  for (const tok of line.replace(/^#\s*/, "").split(/\s+/)) {
    const eq = tok.indexOf("=");
    if (eq > 0) meta[tok.slice(0, eq)] = tok.slice(eq + 1);
  }
  return meta;
}

export interface TrajectoryCsv {
  meta: Record<string, string>;
  lambda: number[];
  t: number[];
  x: number[];
  m2: number[];
  regime: string[];
}

export function readTrajectoryCsv(path: string): TrajectoryCsv {
  const lines = fs.readFileSync(path, "utf-8").split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 3) {
    throw new Error(`${path}: empty trajectory file`);
  }
  const meta = parseHeaderComment(lines[0]);
  const cols = lines[1].split(",");
  if (cols[0] !== "lambda") throw new Error(`${path}: unexpected trajectory columns`);
  const out: TrajectoryCsv = { meta, lambda: [], t: [], x: [], m2: [], regime: [] };
  for (const line of lines.slice(2)) {
    const p = line.split(",");
    out.lambda.push(Number(p[0]));
    out.t.push(Number(p[1]));
    out.x.push(Number(p[2]));
    out.m2.push(Number(p[9]));
    out.regime.push(p[10]);
  }
  return out;
}

export interface FanCsv {
  meta: Record<string, string>;
  classes: string[];
  t: number[];
  /** positions[i][j]: trajectory j at checkpoint i */
  positions: number[][];
}

export function readFanCsv(path: string): FanCsv {
  const lines = fs.readFileSync(path, "utf-8").split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 4) throw new Error(`${path}: empty trajectory fan`);
  const meta = parseHeaderComment(lines[0]);
  const classes = lines[1].split(",").slice(1);
  const t: number[] = [];
  const positions: number[][] = [];
  for (const line of lines.slice(2)) {
    const p = line.split(",");
    const tv = p[0] === "t0" ? NaN : Number(p[0]);
    const row = p.slice(1).map(Number);
    if (p[0] === "t0") {
      t.push(0.0);
    } else {
      t.push(tv);
    }
    positions.push(row);
  }
  return { meta, classes, t, positions };
}

export interface ProfileCsv {
  meta: Record<string, string>;
  r: number[];
  f: number[];
}

export function readProfileCsv(path: string): ProfileCsv {
  const lines = fs.readFileSync(path, "utf-8").split(/\r?\n/).filter((l) => l.length > 0);
  let meta: Record<string, string> = {};
  let start = 0;
  if (lines[0]?.startsWith("#")) {
    meta = parseHeaderComment(lines[0]);
    start = 1;
  }
  if (lines[start] && /^[a-zA-Z]/.test(lines[start])) start += 1; // column header
  const r: number[] = [];
  const f: number[] = [];
  for (const line of lines.slice(start)) {
    const p = line.split(",");
    r.push(Number(p[0]));
    f.push(Number(p[1]));
  }
  if (r.length === 0) throw new Error(`${path}: empty profile`);
  return { meta, r, f };
}

export interface DivergenceCsv {
  meta: Record<string, string>;
  dz1: number[];
  x1FinalA: number[];
  x1FinalB: number[];
}

export function readDivergenceCsv(path: string): DivergenceCsv {
  const lines = fs.readFileSync(path, "utf-8").split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 3) throw new Error(`${path}: empty divergence file`);
  const meta = parseHeaderComment(lines[0]);
  const dz1: number[] = [];
  const a: number[] = [];
  const b: number[] = [];
  for (const line of lines.slice(2)) {
    const p = line.split(",");
    a.push(Number(p[2]));
    b.push(Number(p[3]));
    dz1.push(Number(p[4]));
  }
  return { meta, dz1, x1FinalA: a, x1FinalB: b };
}

/** Overlaid inputs must agree on the run they came from. */
export function requireMatchingHashes(entries: Array<[string, string | undefined]>): string {
  const known = entries.filter(([, h]) => h !== undefined && h !== "") as Array<[string, string]>;
  if (known.length === 0) return "";
  const first = known[0][1];
  for (const [name, h] of known) {
    if (h !== first) {
      throw new Error(
        `config hash mismatch between overlaid inputs: ${known[0][0]}=${first.slice(0, 12)}... vs ${name}=${h.slice(0, 12)}...`,
      );
    }
  }
  return first;
}
