/**
 * Cursor trace recording against the media clock.
 *
 * Timestamps come from the video element's currentTime, never the wall
 * clock, so pauses and buffering stalls do not advance t_ms.  Samples
 * are taken by a fixed-cadence timer and additionally on every rendered
 * frame; repeats at the same media timestamp are dropped, which also
 * silences the timer while playback is stalled.
 */

export interface ClientSample {
  tMs: number;
  x: number;
  y: number;
}

const clamp01 = (v: number) => Math.min(Math.max(v, 0), 1);

export class TraceRecorder {
  static readonly DEFAULT_CADENCE_HZ = 50;

  readonly cadenceHz: number;
  #mediaTimeS: () => number;
  #samples: ClientSample[] = [];
  #lastTMs = -1;

  constructor(mediaTimeS: () => number, cadenceHz = TraceRecorder.DEFAULT_CADENCE_HZ) {
    if (cadenceHz <= 0) throw new Error(`cadence must be positive, got ${cadenceHz}`);
    this.#mediaTimeS = mediaTimeS;
    this.cadenceHz = cadenceHz;
  }

  get intervalMs(): number {
    return 1000 / this.cadenceHz;
  }

  /** Record the cursor at the current media time; coordinates are clamped
   * to the unit square, so a cursor outside the video rectangle sticks to
   * the nearest edge. */
  sample(x01: number, y01: number): boolean {
    const tMs = Math.round(this.#mediaTimeS() * 1000);
    if (tMs < 0 || tMs <= this.#lastTMs) return false;
    this.#samples.push({ tMs, x: clamp01(x01), y: clamp01(y01) });
    this.#lastTMs = tMs;
    return true;
  }

  get samples(): readonly ClientSample[] {
    return this.#samples;
  }

  get length(): number {
    return this.#samples.length;
  }

  /** Samples in the wire shape expected by the trace upload endpoint. */
  toUpload(): [number, number, number][] {
    return this.#samples.map((s) => [s.tMs, s.x, s.y]);
  }

  reset(): void {
    this.#samples = [];
    this.#lastTMs = -1;
  }
}
