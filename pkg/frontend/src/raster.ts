/** RGBA pixel buffer with the few drawing operations the figures need. */

import type { Image } from "./png.js";
import type { Rgb } from "./colormap.js";

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8ClampedArray;

  constructor(width: number, height: number, fill: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8ClampedArray(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.pixels[i * 4] = fill[0];
      this.pixels[i * 4 + 1] = fill[1];
      this.pixels[i * 4 + 2] = fill[2];
      this.pixels[i * 4 + 3] = 255;
    }
  }

  set(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const at = (y * this.width + x) * 4;
    this.pixels[at] = color[0];
    this.pixels[at + 1] = color[1];
    this.pixels[at + 2] = color[2];
    this.pixels[at + 3] = 255;
  }

  /** Fill an axis-aligned block; used for nearest-neighbor upscaling. */
  block(x0: number, y0: number, w: number, h: number, color: Rgb): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.set(x, y, color);
      }
    }
  }

  /**
   * Fill a convex polygon by scanline; vertices in pixel coordinates.
   * Good enough for the projected surface quads.
   */
  fillPolygon(points: Array<[number, number]>, color: Rgb): void {
    const ys = points.map((p) => p[1]);
    const yMin = Math.max(0, Math.ceil(Math.min(...ys)));
    const yMax = Math.min(this.height - 1, Math.floor(Math.max(...ys)));
    for (let y = yMin; y <= yMax; y++) {
      const xs: number[] = [];
      for (let k = 0; k < points.length; k++) {
        const [x1, y1] = points[k];
        const [x2, y2] = points[(k + 1) % points.length];
        if (y1 === y2) continue;
        if (y >= Math.min(y1, y2) && y < Math.max(y1, y2)) {
          xs.push(x1 + ((y - y1) * (x2 - x1)) / (y2 - y1));
        }
      }
      xs.sort((a, b) => a - b);
      for (let k = 0; k + 1 < xs.length; k += 2) {
        const x0 = Math.max(0, Math.ceil(xs[k]));
        const x1 = Math.min(this.width - 1, Math.floor(xs[k + 1]));
        for (let x = x0; x <= x1; x++) this.set(x, y, color);
      }
    }
  }

  toImage(): Image {
    return { width: this.width, height: this.height, pixels: this.pixels };
  }
}
