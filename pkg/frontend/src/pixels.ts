/**
 * Frame buffers and netpbm (PGM/PPM) parsing.
 *
 * Pixel data lives in per-channel Float32 planes with values in [0, 1];
 * pixel (ix, iy) is centered at continuous position (ix + 0.5, iy + 0.5),
 * matching the backend toolkit's convention.
 */

export interface PlanarFrame {
  width: number;
  height: number;
  /** 1 plane for gray, 3 (r, g, b) for color */
  planes: Float32Array[];
}

export function allocFrame(width: number, height: number, channels: number): PlanarFrame {
  const planes: Float32Array[] = [];
  for (let c = 0; c < channels; c++) planes.push(new Float32Array(width * height));
  return { width, height, planes };
}

/** Split interleaved RGBA canvas pixels into [0,1] planes (alpha dropped). */
export function imageDataToPlanes(
  data: Uint8ClampedArray,
  width: number,
  height: number
): PlanarFrame {
  const frame = allocFrame(width, height, 3);
  const n = width * height;
  for (let i = 0; i < n; i++) {
    frame.planes[0][i] = data[i * 4] / 255;
    frame.planes[1][i] = data[i * 4 + 1] / 255;
    frame.planes[2][i] = data[i * 4 + 2] / 255;
  }
  return frame;
}

/** Pack [0,1] planes back into interleaved RGBA bytes (alpha = 255). */
export function planesToImageData(frame: PlanarFrame, out: Uint8ClampedArray): void {
  const n = frame.width * frame.height;
  const [r, g, b] = frame.planes.length === 3
    ? frame.planes
    : [frame.planes[0], frame.planes[0], frame.planes[0]];
  for (let i = 0; i < n; i++) {
    out[i * 4] = Math.round(r[i] * 255);
    out[i * 4 + 1] = Math.round(g[i] * 255);
    out[i * 4 + 2] = Math.round(b[i] * 255);
    out[i * 4 + 3] = 255;
  }
}

function readToken(bytes: Uint8Array, pos: { at: number }): string {
  while (pos.at < bytes.length) {
    const c = bytes[pos.at];
    if (c === 0x23) {
      // '#' comment runs to end of line
      while (pos.at < bytes.length && bytes[pos.at] !== 0x0a) pos.at++;
    } else if (c === 0x20 || c === 0x09 || c === 0x0a || c === 0x0d) {
      pos.at++;
    } else {
      break;
    }
  }
  const start = pos.at;
  while (pos.at < bytes.length && ![0x20, 0x09, 0x0a, 0x0d].includes(bytes[pos.at])) pos.at++;
  return new TextDecoder().decode(bytes.subarray(start, pos.at));
}

/** Parse binary P5 (gray) or P6 (rgb) into [0,1] planes. */
export function parseNetpbm(bytes: Uint8Array): PlanarFrame {
  const pos = { at: 0 };
  const magic = readToken(bytes, pos);
  if (magic !== "P5" && magic !== "P6") throw new Error(`unsupported netpbm type ${magic}`);
  const width = parseInt(readToken(bytes, pos), 10);
  const height = parseInt(readToken(bytes, pos), 10);
  const maxval = parseInt(readToken(bytes, pos), 10);
  pos.at++; // exactly one whitespace byte after maxval
  const channels = magic === "P6" ? 3 : 1;
  const frame = allocFrame(width, height, channels);
  const n = width * height;
  if (maxval > 255) {
    for (let i = 0; i < n; i++) {
      for (let c = 0; c < channels; c++) {
        const o = pos.at + (i * channels + c) * 2;
        frame.planes[c][i] = ((bytes[o] << 8) | bytes[o + 1]) / maxval;
      }
    }
  } else {
    for (let i = 0; i < n; i++) {
      for (let c = 0; c < channels; c++) {
        frame.planes[c][i] = bytes[pos.at + i * channels + c] / maxval;
      }
    }
  }
  return frame;
}

/** Serialize [0,1] planes as 8-bit binary PGM/PPM. */
export function serializeNetpbm(frame: PlanarFrame): Uint8Array {
  const channels = frame.planes.length;
  if (channels !== 1 && channels !== 3) throw new Error(`cannot store ${channels} channels`);
  const header = `${channels === 3 ? "P6" : "P5"}\n${frame.width} ${frame.height}\n255\n`;
  const headerBytes = new TextEncoder().encode(header);
  const n = frame.width * frame.height;
  const out = new Uint8Array(headerBytes.length + n * channels);
  out.set(headerBytes);
  for (let i = 0; i < n; i++) {
    for (let c = 0; c < channels; c++) {
      const v = Math.round(Math.min(Math.max(frame.planes[c][i], 0), 1) * 255);
      out[headerBytes.length + i * channels + c] = v;
    }
  }
  return out;
}
