import * as fs from "fs";
import { PNG } from "pngjs";

import { GLYPHS, GLYPH_HEIGHT, GLYPH_WIDTH } from "./font";
import { Rgb } from "./palette";

/** RGBA pixel buffer with the handful of drawing primitives the figure
 * styles need. No timestamps or metadata are written, so output bytes are
 * a pure function of the drawing calls. */
export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Buffer;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = Buffer.alloc(width * height * 4);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const k = (y * this.width + x) * 4;
    this.data[k] = color[0];
    this.data[k + 1] = color[1];
    this.data[k + 2] = color[2];
    this.data[k + 3] = 255;
  }

  get(x: number, y: number): Rgb {
    const k = (y * this.width + x) * 4;
    return [this.data[k], this.data[k + 1], this.data[k + 2]];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    for (let j = y; j < y + h; j += 1) {
      for (let i = x; i < x + w; i += 1) this.set(i, j, color);
    }
  }

  /** Bresenham segment. */
  line(x0: number, y0: number, x1: number, y1: number, color: Rgb): void {
    let [xa, ya] = [Math.round(x0), Math.round(y0)];
    const [xb, yb] = [Math.round(x1), Math.round(y1)];
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(xa, ya, color);
      if (xa === xb && ya === yb) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xa += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }

  dashedLine(x0: number, y0: number, x1: number, y1: number, color: Rgb,
             on = 4, off = 3): void {
    const steps = Math.max(Math.abs(x1 - x0), Math.abs(y1 - y0));
    for (let k = 0; k <= steps; k += 1) {
      if (k % (on + off) < on) {
        const x = Math.round(x0 + ((x1 - x0) * k) / steps);
        const y = Math.round(y0 + ((y1 - y0) * k) / steps);
        this.set(x, y, color);
      }
    }
  }

  text(x: number, y: number, s: string, color: Rgb): void {
    let cx = x;
    for (const ch of s) {
      const glyph = GLYPHS[ch] ?? GLYPHS[" "];
      for (let col = 0; col < GLYPH_WIDTH; col += 1) {
        for (let row = 0; row < GLYPH_HEIGHT; row += 1) {
          if ((glyph[col] >> row) & 1) this.set(cx + col, y + row, color);
        }
      }
      cx += GLYPH_WIDTH + 1;
    }
  }

  /** Text rotated 90 degrees counterclockwise (for y-axis labels). */
  textVertical(x: number, y: number, s: string, color: Rgb): void {
    let cy = y;
    for (const ch of s) {
      const glyph = GLYPHS[ch] ?? GLYPHS[" "];
      for (let col = 0; col < GLYPH_WIDTH; col += 1) {
        for (let row = 0; row < GLYPH_HEIGHT; row += 1) {
          if ((glyph[col] >> row) & 1) this.set(x + row, cy - col, color);
        }
      }
      cy -= GLYPH_WIDTH + 1;
    }
  }

  writePng(path: string): void {
    const png = new PNG({ width: this.width, height: this.height });
    this.data.copy(png.data);
    fs.writeFileSync(path, PNG.sync.write(png));
  }
}

export function textWidth(s: string): number {
  return s.length * (GLYPH_WIDTH + 1) - 1;
}
