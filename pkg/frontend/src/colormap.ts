/** Fixed-control-point colormaps (piecewise-linear), deterministic. */

import type { Color } from "./raster.js";

type Stop = [number, number, number, number];

const MAPS: Record<string, Stop[]> = {
  // perceptually-ordered dark->bright map for magnitudes
  inferno: [
    [0.0, 0, 0, 4],
    [0.2, 51, 10, 95],
    [0.4, 120, 28, 109],
    [0.6, 187, 55, 84],
    [0.8, 236, 121, 36],
    [0.9, 251, 180, 26],
    [1.0, 252, 255, 164],
  ],
  gray: [
    [0.0, 10, 10, 12],
    [1.0, 245, 245, 247],
  ],
  // diverging map for signed fields / phases
  coolwarm: [
    [0.0, 59, 76, 192],
    [0.5, 221, 221, 221],
    [1.0, 180, 4, 38],
  ],
};

export function colormap(name: string, v: number): Color {
  const stops = MAPS[name];
  if (!stops) throw new Error(`unknown colormap ${name}; have ${Object.keys(MAPS).join(", ")}`);
  const t = Math.min(1, Math.max(0, v));
  for (let i = 1; i < stops.length; i++) {
    if (t <= stops[i][0]) {
      const [t0, r0, g0, b0] = stops[i - 1];
      const [t1, r1, g1, b1] = stops[i];
      const u = t1 > t0 ? (t - t0) / (t1 - t0) : 0;
      return [
        Math.round(r0 + u * (r1 - r0)),
        Math.round(g0 + u * (g1 - g0)),
        Math.round(b0 + u * (b1 - b0)),
        255,
      ];
    }
  }
  const last = stops[stops.length - 1];
  return [last[1], last[2], last[3], 255];
}

export const MASK_COLOR: Color = [88, 88, 94, 255];
