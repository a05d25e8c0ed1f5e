/**
 * Figure kinds rendered from simulator output files.
 *
 * Rendering is a pure function of (spec, input file bytes): fixed canvas
 * geometry, fixed colormaps, bitmap font, deterministic PNG encoding.  Inputs
 * that carry config hashes must agree before anything is drawn.
 */

import {
  FieldContainer,
  readDivergenceCsv,
  readFanCsv,
  readField,
  readProfileCsv,
  readTrajectoryCsv,
  requireMatchingHashes,
} from "./formats.js";
import { MASK_COLOR, colormap } from "./colormap.js";
import {
  AxesRect,
  BLACK,
  BLUE,
  Canvas,
  CYAN,
  Color,
  GRAY,
  RED,
  WHITE,
  YELLOW,
  dataToPixel,
  drawAxes,
} from "./raster.js";
import { encodePng } from "./png.js";

export interface FigureSpec {
  kind: "trajectory_fan" | "field_map" | "radial_profiles" | "epr_divergence";
  inputs: Record<string, string | string[]>;
  output: string;
  width?: number;
  height?: number;
  colormap?: string;
  title?: string;
}

const VERSION = "dslab-fig 0.1.0";

function layout(spec: FigureSpec): { cv: Canvas; ax: AxesRect } {
  const width = spec.width ?? 900;
  const height = spec.height ?? 620;
  const cv = new Canvas(width, height);
  const ax: AxesRect = {
    x0: 64,
    y0: 28,
    w: width - 84,
    h: height - 64,
    xlim: [0, 1],
    ylim: [0, 1],
  };
  return { cv, ax };
}

function drawFieldBackground(
  cv: Canvas,
  ax: AxesRect,
  field: FieldContainer,
  mapName: string,
  scale: (v: number) => number,
): void {
  // container axes are (row=axis0, col=axis1); axis0 -> vertical, axis1 -> horizontal
  const [a0, a1] = field.axes;
  const n0 = a0.n;
  const n1 = a1.n;
  const mag = new Float64Array(n0 * n1);
  let hi = 0;
  for (let i = 0; i < mag.length; i++) {
    const v = Math.hypot(field.re[i], field.im[i]);
    mag[i] = v;
    if (Number.isFinite(v) && v > hi) hi = v;
  }
  if (hi <= 0) hi = 1;
  for (let py = 0; py < ax.h; py++) {
    const yv = ax.ylim[1] - ((py + 0.5) / ax.h) * (ax.ylim[1] - ax.ylim[0]);
    const i0 = Math.min(n0 - 1, Math.max(0, Math.round(((yv - a0.min) / (a0.max - a0.min)) * (n0 - 1))));
    for (let px = 0; px < ax.w; px++) {
      const xv = ax.xlim[0] + ((px + 0.5) / ax.w) * (ax.xlim[1] - ax.xlim[0]);
      const i1 = Math.min(n1 - 1, Math.max(0, Math.round(((xv - a1.min) / (a1.max - a1.min)) * (n1 - 1))));
      const v = mag[i0 * n1 + i1];
      const c: Color = Number.isFinite(v) ? colormap(mapName, scale(v / hi)) : MASK_COLOR;
      cv.set(ax.x0 + px, ax.y0 + py, c);
    }
  }
}

function polyline(cv: Canvas, ax: AxesRect, xs: number[], ys: number[], c: Color, thick = 1): void {
  for (let i = 1; i < xs.length; i++) {
    const [px0, py0] = dataToPixel(ax, xs[i - 1], ys[i - 1]);
    const [px1, py1] = dataToPixel(ax, xs[i], ys[i]);
    cv.line(px0, py0, px1, py1, c, thick);
  }
}

function renderTrajectoryFan(spec: FigureSpec): Buffer {
  const bg = readField(String(spec.inputs.background));
  const fan = readFanCsv(String(spec.inputs.fan));
  const hash = requireMatchingHashes([
    ["background", bg.meta.config_hash as string | undefined],
    ["fan", fan.meta.config_hash],
  ]);
  const { cv, ax } = layout(spec);
  const [tAxis, xAxis] = bg.axes;
  ax.xlim = [xAxis.min, xAxis.max];
  ax.ylim = [tAxis.min, tAxis.max];
  drawFieldBackground(cv, ax, bg, spec.colormap ?? "gray", (v) => Math.pow(v, 0.4));
  const nTraj = fan.classes.length;
  for (let j = 0; j < nTraj; j++) {
    const xs: number[] = [];
    const ts: number[] = [];
    for (let i = 0; i < fan.t.length; i++) {
      ts.push(fan.t[i]);
      xs.push(fan.positions[i][j]);
    }
    const color = fan.classes[j] === "reflected" ? RED : YELLOW;
    polyline(cv, ax, xs, ts, color, 1);
  }
  drawAxes(cv, ax, "x", "t");
  cv.text(ax.x0 + 120, ax.y0 + 4, "reflected", RED);
  cv.text(ax.x0 + 190, ax.y0 + 4, "transmitted", YELLOW);
  return encodePng(cv.width, cv.height, cv.pixels, {
    software: VERSION,
    kind: spec.kind,
    config_hash: hash,
  });
}

function renderFieldMap(spec: FigureSpec): Buffer {
  const field = readField(String(spec.inputs.field));
  const entries: Array<[string, string | undefined]> = [
    ["field", field.meta.config_hash as string | undefined],
  ];
  let traj = null;
  if (spec.inputs.trajectory) {
    traj = readTrajectoryCsv(String(spec.inputs.trajectory));
    entries.push(["trajectory", traj.meta.config_hash]);
  }
  const hash = requireMatchingHashes(entries);
  const { cv, ax } = layout(spec);
  const [tAxis, xAxis] = field.axes;
  ax.xlim = [xAxis.min, xAxis.max];
  ax.ylim = [tAxis.min, tAxis.max];
  drawFieldBackground(cv, ax, field, spec.colormap ?? "inferno", (v) => Math.pow(v, 0.25));
  if (traj) {
    polyline(cv, ax, traj.x, traj.t, CYAN, 2);
  }
  drawAxes(cv, ax, "x", "t");
  return encodePng(cv.width, cv.height, cv.pixels, {
    software: VERSION,
    kind: spec.kind,
    config_hash: hash,
  });
}

function renderRadialProfiles(spec: FigureSpec): Buffer {
  const paths = Array.isArray(spec.inputs.profiles)
    ? spec.inputs.profiles
    : [String(spec.inputs.profiles)];
  const profiles = paths.map((p) => readProfileCsv(p));
  const hash = requireMatchingHashes(
    profiles.map((p, i) => [`profiles[${i}]`, p.meta.config_hash] as [string, string | undefined]),
  );
  const { cv, ax } = layout(spec);
  let xc: [number, number] = [Infinity, -Infinity];
  let yc: [number, number] = [Infinity, -Infinity];
  for (const p of profiles) {
    for (const v of p.r) {
      xc = [Math.min(xc[0], v), Math.max(xc[1], v)];
    }
    for (const v of p.f) {
      yc = [Math.min(yc[0], v), Math.max(yc[1], v)];
    }
  }
  const pad = 0.05 * (yc[1] - yc[0] || 1);
  ax.xlim = xc;
  ax.ylim = [yc[0] - pad, yc[1] + pad];
  const colors: Color[] = [BLUE, RED, [16, 140, 60, 255], [150, 60, 180, 255]];
  profiles.forEach((p, i) => polyline(cv, ax, p.r, p.f, colors[i % colors.length], 2 - (i % 2)));
  drawAxes(cv, ax, "r", "f");
  return encodePng(cv.width, cv.height, cv.pixels, {
    software: VERSION,
    kind: spec.kind,
    config_hash: hash,
  });
}

function renderEprDivergence(spec: FigureSpec): Buffer {
  const div = readDivergenceCsv(String(spec.inputs.divergence));
  const hash = requireMatchingHashes([["divergence", div.meta.config_hash]]);
  const { cv, ax } = layout(spec);
  const sorted = [...div.dz1].sort((a, b) => a - b);
  const floor = 1e-16;
  const logs = sorted.map((v) => Math.log10(Math.max(v, floor)));
  ax.xlim = [0, 1];
  ax.ylim = [Math.floor(Math.min(...logs)), Math.ceil(Math.max(...logs)) || 1];
  const q = sorted.map((_, i) => (i + 0.5) / sorted.length);
  polyline(cv, ax, q, logs, BLUE, 2);
  drawAxes(cv, ax, "quantile", "log10 dz1");
  return encodePng(cv.width, cv.height, cv.pixels, {
    software: VERSION,
    kind: spec.kind,
    config_hash: hash,
  });
}

export function renderFigure(spec: FigureSpec): Buffer {
  switch (spec.kind) {
    case "trajectory_fan":
      return renderTrajectoryFan(spec);
    case "field_map":
      return renderFieldMap(spec);
    case "radial_profiles":
      return renderRadialProfiles(spec);
    case "epr_divergence":
      return renderEprDivergence(spec);
    default:
      throw new Error(`unknown figure kind ${(spec as FigureSpec).kind}`);
  }
}
