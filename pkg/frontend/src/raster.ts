/**
 * Tiny deterministic raster canvas: RGBA buffer, lines, rectangles, bitmap
 * text (5x7 glyphs), and linear axes with ticks.  No platform font or
 * graphics dependency, so output is pixel-identical everywhere.
 */

export type Color = [number, number, number, number];

export const WHITE: Color = [255, 255, 255, 255];
export const BLACK: Color = [20, 20, 24, 255];
export const GRAY: Color = [130, 130, 138, 255];
export const RED: Color = [214, 48, 38, 255];
export const YELLOW: Color = [242, 182, 12, 255];
export const CYAN: Color = [44, 188, 210, 255];
export const BLUE: Color = [48, 94, 214, 255];

// 5x7 glyphs, rows top->bottom as 5-bit masks (msb = left column)
const FONT: Record<string, number[]> = {
  "0": [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  "2": [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  "3": [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  "4": [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  "5": [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  "6": [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  "9": [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  "+": [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  ",": [0x00, 0x00, 0x00, 0x00, 0x0c, 0x04, 0x08],
  ":": [0x00, 0x0c, 0x0c, 0x00, 0x0c, 0x0c, 0x00],
  "=": [0x00, 0x00, 0x1f, 0x00, 0x1f, 0x00, 0x00],
  "/": [0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10],
  "|": [0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04],
  "(": [0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02],
  ")": [0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08],
  " ": [0, 0, 0, 0, 0, 0, 0],
  a: [0x00, 0x00, 0x0e, 0x01, 0x0f, 0x11, 0x0f],
  b: [0x10, 0x10, 0x1e, 0x11, 0x11, 0x11, 0x1e],
  c: [0x00, 0x00, 0x0e, 0x10, 0x10, 0x11, 0x0e],
  d: [0x01, 0x01, 0x0f, 0x11, 0x11, 0x11, 0x0f],
  e: [0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e],
  f: [0x06, 0x08, 0x1c, 0x08, 0x08, 0x08, 0x08],
  g: [0x00, 0x0f, 0x11, 0x0f, 0x01, 0x11, 0x0e],
  h: [0x10, 0x10, 0x1e, 0x11, 0x11, 0x11, 0x11],
  i: [0x04, 0x00, 0x0c, 0x04, 0x04, 0x04, 0x0e],
  j: [0x02, 0x00, 0x06, 0x02, 0x02, 0x12, 0x0c],
  k: [0x10, 0x10, 0x12, 0x14, 0x18, 0x14, 0x12],
  l: [0x0c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
  m: [0x00, 0x00, 0x1a, 0x15, 0x15, 0x15, 0x15],
  n: [0x00, 0x00, 0x1e, 0x11, 0x11, 0x11, 0x11],
  o: [0x00, 0x00, 0x0e, 0x11, 0x11, 0x11, 0x0e],
  p: [0x00, 0x1e, 0x11, 0x1e, 0x10, 0x10, 0x10],
  q: [0x00, 0x0f, 0x11, 0x0f, 0x01, 0x01, 0x01],
  r: [0x00, 0x00, 0x16, 0x19, 0x10, 0x10, 0x10],
  s: [0x00, 0x00, 0x0f, 0x10, 0x0e, 0x01, 0x1e],
  t: [0x08, 0x08, 0x1c, 0x08, 0x08, 0x09, 0x06],
  u: [0x00, 0x00, 0x11, 0x11, 0x11, 0x13, 0x0d],
  v: [0x00, 0x00, 0x11, 0x11, 0x11, 0x0a, 0x04],
  w: [0x00, 0x00, 0x15, 0x15, 0x15, 0x15, 0x0a],
  x: [0x00, 0x00, 0x11, 0x0a, 0x04, 0x0a, 0x11],
  y: [0x00, 0x11, 0x11, 0x0f, 0x01, 0x11, 0x0e],
  z: [0x00, 0x00, 0x1f, 0x02, 0x04, 0x08, 0x1f],
  _: [0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1f],
};

export class Canvas {
  width: number;
  height: number;
  pixels: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.pixels.set(background, i * 4);
    }
  }

  set(x: number, y: number, c: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    this.pixels.set(c, (y * this.width + x) * 4);
  }

  fillRect(x0: number, y0: number, w: number, h: number, c: Color): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) this.set(x, y, c);
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, c: Color, thick = 1): void {
    // Bresenham with optional square brush
    let ix0 = Math.round(x0);
    let iy0 = Math.round(y0);
    const ix1 = Math.round(x1);
    const iy1 = Math.round(y1);
    const dx = Math.abs(ix1 - ix0);
    const dy = -Math.abs(iy1 - iy0);
    const sx = ix0 < ix1 ? 1 : -1;
    const sy = iy0 < iy1 ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      if (thick <= 1) {
        this.set(ix0, iy0, c);
      } else {
        const r = thick >> 1;
        this.fillRect(ix0 - r, iy0 - r, thick, thick, c);
      }
      if (ix0 === ix1 && iy0 === iy1) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        ix0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        iy0 += sy;
      }
    }
  }

  text(x: number, y: number, s: string, c: Color = BLACK, scale = 1): void {
    let cx = x;
    for (const ch of s) {
      const glyph = FONT[ch] ?? FONT[ch.toLowerCase()] ?? FONT[" "];
      for (let row = 0; row < 7; row++) {
        for (let col = 0; col < 5; col++) {
          if (glyph[row] & (1 << (4 - col))) {
            this.fillRect(cx + col * scale, y + row * scale, scale, scale, c);
          }
        }
      }
      cx += 6 * scale;
    }
  }

  textWidth(s: string, scale = 1): number {
    return s.length * 6 * scale;
  }
}

export interface AxesRect {
  x0: number;
  y0: number;
  w: number;
  h: number;
  xlim: [number, number];
  ylim: [number, number];
}

export function dataToPixel(ax: AxesRect, x: number, y: number): [number, number] {
  const px = ax.x0 + ((x - ax.xlim[0]) / (ax.xlim[1] - ax.xlim[0])) * ax.w;
  const py = ax.y0 + ax.h - ((y - ax.ylim[0]) / (ax.ylim[1] - ax.ylim[0])) * ax.h;
  return [px, py];
}

export function niceTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const step0 = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (step0 <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 10000 || a < 0.001) return v.toExponential(1).replace("e", "e");
  const s = a >= 100 ? v.toFixed(0) : a >= 1 ? v.toFixed(1) : v.toFixed(3);
  return s.replace(/\.?0+$/, "");
}

export function drawAxes(cv: Canvas, ax: AxesRect, xlabel: string, ylabel: string): void {
  cv.line(ax.x0, ax.y0, ax.x0, ax.y0 + ax.h, BLACK);
  cv.line(ax.x0, ax.y0 + ax.h, ax.x0 + ax.w, ax.y0 + ax.h, BLACK);
  cv.line(ax.x0 + ax.w, ax.y0, ax.x0 + ax.w, ax.y0 + ax.h, GRAY);
  cv.line(ax.x0, ax.y0, ax.x0 + ax.w, ax.y0, GRAY);
  for (const t of niceTicks(ax.xlim[0], ax.xlim[1])) {
    const [px] = dataToPixel(ax, t, ax.ylim[0]);
    cv.line(px, ax.y0 + ax.h, px, ax.y0 + ax.h + 4, BLACK);
    const label = formatTick(t);
    cv.text(Math.round(px - cv.textWidth(label) / 2), ax.y0 + ax.h + 7, label);
  }
  for (const t of niceTicks(ax.ylim[0], ax.ylim[1])) {
    const [, py] = dataToPixel(ax, ax.xlim[0], t);
    cv.line(ax.x0 - 4, py, ax.x0, py, BLACK);
    const label = formatTick(t);
    cv.text(ax.x0 - 6 - cv.textWidth(label), Math.round(py - 3), label);
  }
  cv.text(ax.x0 + ax.w - cv.textWidth(xlabel), ax.y0 + ax.h + 18, xlabel);
  cv.text(ax.x0 + 4, ax.y0 + 4, ylabel);
}
