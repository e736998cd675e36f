/**
 * Browser wiring: plays one video through the foveated pipeline on a
 * canvas, tracks the cursor, and records the trace.
 *
 * The render loop runs off requestAnimationFrame; recording also runs on
 * a 50 Hz timer so slow rendering cannot thin out the trace.  Upload
 * happens after playback ends and never blocks the render path.
 */

import type { FoveationParams } from "./blend";
import { renderFoveatedFrame } from "./blend";
import { imageDataToPlanes, planesToImageData } from "./pixels";
import { TraceRecorder } from "./recorder";

export interface PlaybackResult {
  samples: [number, number, number][];
  renderedFrames: number;
  renderFps: number;
}

export class FoveatedPlayer {
  #video: HTMLVideoElement;
  #canvas: HTMLCanvasElement;
  #ctx: CanvasRenderingContext2D;
  #params: FoveationParams;
  #cursor = { x: 0.5, y: 0.5 };
  #recorder: TraceRecorder;
  #running = false;

  constructor(video: HTMLVideoElement, canvas: HTMLCanvasElement, params: FoveationParams) {
    this.#video = video;
    this.#canvas = canvas;
    const ctx = canvas.getContext("2d", { willReadFrequently: true });
    if (!ctx) throw new Error("2d canvas is unavailable");
    this.#ctx = ctx;
    this.#params = params;
    this.#recorder = new TraceRecorder(() => this.#video.currentTime);
    canvas.addEventListener("mousemove", (ev) => this.#trackCursor(ev));
    canvas.addEventListener("mouseleave", (ev) => this.#trackCursor(ev));
  }

  #trackCursor(ev: MouseEvent): void {
    const rect = this.#canvas.getBoundingClientRect();
    // clamping to [0,1] keeps a cursor outside the rectangle pinned to the edge
    this.#cursor.x = Math.min(Math.max((ev.clientX - rect.left) / rect.width, 0), 1);
    this.#cursor.y = Math.min(Math.max((ev.clientY - rect.top) / rect.height, 0), 1);
  }

  renderCurrentFrame(): void {
    const { width, height } = this.#canvas;
    this.#ctx.drawImage(this.#video, 0, 0, width, height);
    const image = this.#ctx.getImageData(0, 0, width, height);
    const sharp = imageDataToPlanes(image.data, width, height);
    const blended = renderFoveatedFrame(sharp, this.#cursor.x, this.#cursor.y, this.#params);
    planesToImageData(blended, image.data);
    this.#ctx.putImageData(image, 0, 0);
  }

  /** Play the loaded video to its end, rendering and recording. */
  play(): Promise<PlaybackResult> {
    if (this.#running) throw new Error("already playing");
    this.#running = true;
    this.#recorder.reset();
    const renderStart = performance.now();
    let renderedFrames = 0;

    return new Promise((resolve, reject) => {
      const timer = setInterval(() => {
        this.#recorder.sample(this.#cursor.x, this.#cursor.y);
      }, this.#recorder.intervalMs);

      const finish = () => {
        clearInterval(timer);
        this.#running = false;
        const elapsed = (performance.now() - renderStart) / 1000;
        resolve({
          samples: this.#recorder.toUpload(),
          renderedFrames,
          renderFps: elapsed > 0 ? renderedFrames / elapsed : 0,
        });
      };

      const loop = () => {
        if (!this.#running) return;
        if (this.#video.ended) {
          finish();
          return;
        }
        if (!this.#video.paused && this.#video.readyState >= 2) {
          this.renderCurrentFrame();
          this.#recorder.sample(this.#cursor.x, this.#cursor.y);
          renderedFrames++;
        }
        requestAnimationFrame(loop);
      };

      this.#video.play().then(() => requestAnimationFrame(loop), reject);
      this.#video.addEventListener("ended", finish, { once: true });
    });
  }
}

/** Fullscreen is required during the experiment; exiting pauses playback
 * (and with it the media clock, so no samples are produced). */
export function bindFullscreenGuard(video: HTMLVideoElement, container: HTMLElement): void {
  document.addEventListener("fullscreenchange", () => {
    if (!document.fullscreenElement && !video.paused) video.pause();
  });
  container.addEventListener("click", () => {
    if (!document.fullscreenElement) void container.requestFullscreen();
  });
}
