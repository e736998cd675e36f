/**
 * The mouse-contingent display blend: out = W * sharp + (1 - W) * blurred
 * with W = exp(-d^2 / (2 * sigmaW^2)), d the pixel's distance in pixels
 * from the cursor.  Sigmas scale with the displayed frame width.
 */

import { approximateWideBlur } from "./blur";
import type { PlanarFrame } from "./pixels";
import { allocFrame } from "./pixels";

export interface FoveationParams {
  /** blur sigma as a fraction of frame width */
  sigma1Frac: number;
  /** blend falloff sigma as a fraction of frame width */
  sigmaWFrac: number;
}

export const DEFAULT_FOVEATION: FoveationParams = { sigma1Frac: 0.02, sigmaWFrac: 0.2 };

/**
 * Per-axis weight factors; the full weight at (ix, iy) is wx[ix] * wy[iy],
 * which equals exp(-(dx^2 + dy^2) / (2 sigmaW^2)) by separability.
 * Pixel (ix, iy) is measured from its center (ix + 0.5, iy + 0.5) and the
 * cursor maps to pixel position (x01 * width, y01 * height).
 */
export function weightAxes(
  width: number,
  height: number,
  cursorX01: number,
  cursorY01: number,
  sigmaWFrac: number
): { wx: Float32Array; wy: Float32Array } {
  const sigmaW = sigmaWFrac * width;
  const inv = 1 / (2 * sigmaW * sigmaW);
  const gx = cursorX01 * width;
  const gy = cursorY01 * height;
  const wx = new Float32Array(width);
  const wy = new Float32Array(height);
  for (let x = 0; x < width; x++) {
    const d = x + 0.5 - gx;
    wx[x] = Math.exp(-d * d * inv);
  }
  for (let y = 0; y < height; y++) {
    const d = y + 0.5 - gy;
    wy[y] = Math.exp(-d * d * inv);
  }
  return { wx, wy };
}

export function blendPlanes(
  sharp: PlanarFrame,
  blurred: PlanarFrame,
  cursorX01: number,
  cursorY01: number,
  params: FoveationParams,
  out?: PlanarFrame
): PlanarFrame {
  const { width, height } = sharp;
  if (blurred.width !== width || blurred.height !== height) {
    throw new Error("sharp and blurred frames differ in size");
  }
  const dst = out ?? allocFrame(width, height, sharp.planes.length);
  const { wx, wy } = weightAxes(width, height, cursorX01, cursorY01, params.sigmaWFrac);
  const wRow = new Float32Array(width);
  for (let y = 0; y < height; y++) {
    const row = y * width;
    const wyv = wy[y];
    for (let x = 0; x < width; x++) wRow[x] = wx[x] * wyv;
    for (let c = 0; c < sharp.planes.length; c++) {
      const s = sharp.planes[c];
      const b = blurred.planes[c];
      const o = dst.planes[c];
      for (let x = 0; x < width; x++) {
        const w = wRow[x];
        o[row + x] = w * s[row + x] + (1 - w) * b[row + x];
      }
    }
  }
  return dst;
}

/** Full per-frame pipeline: wide blur of the sharp layer, then the blend. */
export function renderFoveatedFrame(
  sharp: PlanarFrame,
  cursorX01: number,
  cursorY01: number,
  params: FoveationParams = DEFAULT_FOVEATION,
  downsampleFactor?: number
): PlanarFrame {
  const sigma1 = params.sigma1Frac * sharp.width;
  const blurred: PlanarFrame = {
    width: sharp.width,
    height: sharp.height,
    planes: sharp.planes.map((p) =>
      approximateWideBlur(p, sharp.width, sharp.height, sigma1, downsampleFactor)
    ),
  };
  return blendPlanes(sharp, blurred, cursorX01, cursorY01, params);
}
