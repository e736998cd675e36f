/**
 * Fast wide Gaussian blur: box-downsample, exact small Gaussian at low
 * resolution, bilinear upsample.
 *
 * The player needs sigma around 2% of the frame width (tens of pixels at
 * HD sizes) every frame; blurring at 1/k resolution cuts the cost by k^2
 * while the composed kernel stays within a couple of 8-bit levels of the
 * exact full-resolution Gaussian.  The low-res sigma is chosen so the
 * total variance (box + gaussian + bilinear triangle) matches the target;
 * k itself is picked to land that sigma near 3 low-res pixels, which
 * keeps the discrete kernel faithful and avoids aliasing.
 */

export interface LowResPlane {
  data: Float32Array;
  width: number;
  height: number;
}

export function boxDownsample(
  src: Float32Array,
  width: number,
  height: number,
  k: number
): LowResPlane {
  const w2 = Math.ceil(width / k);
  const h2 = Math.ceil(height / k);
  const out = new Float32Array(w2 * h2);
  for (let by = 0; by < h2; by++) {
    const y0 = by * k;
    const y1 = Math.min(y0 + k, height);
    for (let bx = 0; bx < w2; bx++) {
      const x0 = bx * k;
      const x1 = Math.min(x0 + k, width);
      let sum = 0;
      for (let y = y0; y < y1; y++) {
        const row = y * width;
        for (let x = x0; x < x1; x++) sum += src[row + x];
      }
      out[by * w2 + bx] = sum / ((y1 - y0) * (x1 - x0));
    }
  }
  return { data: out, width: w2, height: h2 };
}

/** Normalized discrete Gaussian taps, cut off at 5 sigma per side. */
export function gaussianKernel(sigma: number): { taps: Float32Array; radius: number } {
  const radius = Math.max(1, Math.round(5 * sigma));
  const taps = new Float32Array(2 * radius + 1);
  let sum = 0;
  for (let i = -radius; i <= radius; i++) {
    const v = Math.exp(-0.5 * (i / sigma) ** 2);
    taps[i + radius] = v;
    sum += v;
  }
  for (let i = 0; i < taps.length; i++) taps[i] /= sum;
  return { taps, radius };
}

/** Separable Gaussian with replicated edges. */
export function gaussianBlurPlane(
  plane: Float32Array,
  width: number,
  height: number,
  sigma: number
): Float32Array {
  const { taps, radius } = gaussianKernel(sigma);
  const nTaps = taps.length;

  // horizontal pass over a row padded with replicated edge pixels
  const tmp = new Float32Array(plane.length);
  const padded = new Float32Array(width + 2 * radius);
  for (let y = 0; y < height; y++) {
    const row = y * width;
    padded.fill(plane[row], 0, radius);
    padded.set(plane.subarray(row, row + width), radius);
    padded.fill(plane[row + width - 1], radius + width);
    for (let x = 0; x < width; x++) {
      let acc = 0;
      for (let t = 0; t < nTaps; t++) acc += padded[x + t] * taps[t];
      tmp[row + x] = acc;
    }
  }

  // vertical pass accumulating whole rows per tap (contiguous reads)
  const out = new Float32Array(plane.length);
  const rowAcc = new Float32Array(width);
  for (let y = 0; y < height; y++) {
    rowAcc.fill(0);
    for (let t = 0; t < nTaps; t++) {
      let sy = y + t - radius;
      if (sy < 0) sy = 0;
      else if (sy >= height) sy = height - 1;
      const base = sy * width;
      const tap = taps[t];
      for (let x = 0; x < width; x++) rowAcc[x] += tmp[base + x] * tap;
    }
    out.set(rowAcc, y * width);
  }
  return out;
}

/**
 * Bilinear upsample back to full resolution.  Low-res pixel j covers the
 * block centered at full-res position (j + 0.5) * k, and border reads
 * replicate the edge pixel.
 */
export function bilinearUpsample(
  low: LowResPlane,
  width: number,
  height: number,
  k: number,
  out?: Float32Array
): Float32Array {
  const dst = out ?? new Float32Array(width * height);
  const { data, width: w2, height: h2 } = low;

  const x0map = new Int32Array(width);
  const x1map = new Int32Array(width);
  const fxmap = new Float32Array(width);
  for (let x = 0; x < width; x++) {
    const u = (x + 0.5) / k - 0.5;
    const x0 = Math.floor(u);
    fxmap[x] = u - x0;
    x0map[x] = Math.min(Math.max(x0, 0), w2 - 1);
    x1map[x] = Math.min(Math.max(x0 + 1, 0), w2 - 1);
  }

  // bilinear separates: lerp the two source rows once per output row,
  // then lerp horizontally from that short buffer
  const rowLerp = new Float32Array(w2);
  for (let y = 0; y < height; y++) {
    const v = (y + 0.5) / k - 0.5;
    const y0 = Math.floor(v);
    const fy = v - y0;
    const row0 = Math.min(Math.max(y0, 0), h2 - 1) * w2;
    const row1 = Math.min(Math.max(y0 + 1, 0), h2 - 1) * w2;
    for (let j = 0; j < w2; j++) {
      rowLerp[j] = data[row0 + j] * (1 - fy) + data[row1 + j] * fy;
    }
    const outRow = y * width;
    for (let x = 0; x < width; x++) {
      const fx = fxmap[x];
      dst[outRow + x] = rowLerp[x0map[x]] * (1 - fx) + rowLerp[x1map[x]] * fx;
    }
  }
  return dst;
}

/** Downsample factor aiming for a low-res sigma around 3.2 pixels. */
export function autoDownsampleFactor(sigma: number): number {
  return Math.min(Math.max(Math.floor(sigma / 3.2), 1), 16);
}

/**
 * Approximate a full-resolution Gaussian of the given sigma (pixels).
 * Falls back to the exact separable filter when the target is too small
 * to survive downsampling.
 */
export function approximateWideBlur(
  plane: Float32Array,
  width: number,
  height: number,
  sigma: number,
  k?: number
): Float32Array {
  const factor = k ?? autoDownsampleFactor(sigma);
  const boxVar = (factor * factor - 1) / 12;
  const triangleVar = (factor * factor) / 6;
  const remaining = sigma * sigma - boxVar - triangleVar;
  if (factor <= 1 || remaining < (2 * factor) ** 2) {
    return gaussianBlurPlane(plane, width, height, sigma);
  }
  const sigmaLow = Math.sqrt(remaining) / factor;
  const low = boxDownsample(plane, width, height, factor);
  const blurred = gaussianBlurPlane(low.data, low.width, low.height, sigmaLow);
  return bilinearUpsample({ ...low, data: blurred }, width, height, factor);
}
