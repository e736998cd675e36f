/** Deterministic PRNG (mulberry32) so test data is reproducible. */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

import { allocFrame, type PlanarFrame } from "../src/pixels";

/** Smooth synthetic content: moving bright blob over a diagonal gradient.
 * Smoothness matters: it is what real video looks like after the player's
 * heavy peripheral blur, and it keeps the clip compact. */
export function syntheticFrame(
  width: number,
  height: number,
  frameIndex: number,
  channels = 1
): PlanarFrame {
  const frame = allocFrame(width, height, channels);
  const cx = width * (0.3 + 0.4 * Math.sin(frameIndex / 5));
  const cy = height * (0.5 + 0.3 * Math.cos(frameIndex / 7));
  const blobR2 = (0.08 * width) ** 2;
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const gradient = 0.15 + 0.5 * (x / width) + 0.2 * (y / height);
      const d2 = (x - cx) ** 2 + (y - cy) ** 2;
      const blob = 0.6 * Math.exp(-d2 / blobR2);
      const v = Math.min(gradient + blob, 1);
      const i = y * width + x;
      frame.planes[0][i] = v;
      if (channels === 3) {
        frame.planes[1][i] = Math.min(1.1 * v, 1);
        frame.planes[2][i] = 1 - 0.7 * v;
      }
    }
  }
  return frame;
}
