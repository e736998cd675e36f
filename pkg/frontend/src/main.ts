/**
 * Participant flow: capability probe -> session -> tutorial -> one
 * recorded playback per playlist video -> completion code.
 */

import { ApiClient, UploadFailedError } from "./api";
import { DEFAULT_FOVEATION, renderFoveatedFrame } from "./blend";
import { measureSustainedFps, passesCapability } from "./capability";
import { allocFrame } from "./pixels";
import { FoveatedPlayer, bindFullscreenGuard } from "./player";
import { TutorialFlow } from "./tutorial";

const WARMUP_WIDTH = 640;
const WARMUP_HEIGHT = 360;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function show(id: string): void {
  for (const section of document.querySelectorAll<HTMLElement>("main > section")) {
    section.hidden = section.id !== id;
  }
}

/** Synthetic warm-up clip: a drifting bright blob, enough structure for
 * the blur pipeline to do real work during the probe. */
function warmupFrame(frameIndex: number) {
  const frame = allocFrame(WARMUP_WIDTH, WARMUP_HEIGHT, 3);
  const cx = WARMUP_WIDTH * (0.3 + 0.2 * Math.sin(frameIndex / 20));
  const cy = WARMUP_HEIGHT * (0.5 + 0.2 * Math.cos(frameIndex / 17));
  for (let y = 0; y < WARMUP_HEIGHT; y++) {
    for (let x = 0; x < WARMUP_WIDTH; x++) {
      const d2 = (x - cx) ** 2 + (y - cy) ** 2;
      const v = 0.25 + 0.75 * Math.exp(-d2 / 8000);
      const i = y * WARMUP_WIDTH + x;
      frame.planes[0][i] = v;
      frame.planes[1][i] = v * 0.8;
      frame.planes[2][i] = 1 - v;
    }
  }
  return frame;
}

async function probeCapability() {
  const fps = await measureSustainedFps(
    (frameIndex) => {
      const frame = warmupFrame(frameIndex);
      renderFoveatedFrame(frame, (frameIndex % 100) / 100, 0.5, DEFAULT_FOVEATION);
    },
    {
      durationMs: 3000,
      nextFrame: () => new Promise((r) => requestAnimationFrame(() => r())),
    }
  );
  return {
    screen_width: window.screen.width,
    screen_height: window.screen.height,
    measured_fps: fps,
  };
}

async function runTutorial(): Promise<void> {
  const flow = new TutorialFlow();
  const next = el<HTMLButtonElement>("tutorial-next");
  const demoCanvas = el<HTMLCanvasElement>("tutorial-demo");
  const ctx = demoCanvas.getContext("2d");
  let cursor = { x: 0.5, y: 0.5 };

  demoCanvas.addEventListener("mousemove", (ev) => {
    const rect = demoCanvas.getBoundingClientRect();
    cursor = {
      x: Math.min(Math.max((ev.clientX - rect.left) / rect.width, 0), 1),
      y: Math.min(Math.max((ev.clientY - rect.top) / rect.height, 0), 1),
    };
    flow.recordDemoInteraction();
  });

  let frameIndex = 0;
  const drawDemo = () => {
    if (flow.page === "demo" && ctx) {
      const frame = warmupFrame(frameIndex++);
      const blended = renderFoveatedFrame(frame, cursor.x, cursor.y, DEFAULT_FOVEATION);
      const image = ctx.createImageData(frame.width, frame.height);
      // the demo page must sharpen around the live cursor, same math as playback
      const bytes = new Uint8ClampedArray(image.data.buffer);
      for (let i = 0; i < frame.width * frame.height; i++) {
        bytes[i * 4] = blended.planes[0][i] * 255;
        bytes[i * 4 + 1] = blended.planes[1][i] * 255;
        bytes[i * 4 + 2] = blended.planes[2][i] * 255;
        bytes[i * 4 + 3] = 255;
      }
      ctx.putImageData(image, 0, 0);
    }
    if (!flow.done) requestAnimationFrame(drawDemo);
  };

  return new Promise((resolve) => {
    const refresh = () => {
      for (let i = 0; i < 3; i++) {
        el(`tutorial-page-${i}`).hidden = i !== flow.pageIndex;
      }
      next.disabled = !flow.canAdvance();
      if (flow.page === "demo") next.disabled = !flow.canAdvance();
    };
    const poll = setInterval(refresh, 100);
    next.addEventListener("click", () => {
      if (!flow.canAdvance()) return;
      if (flow.advance() === "done") {
        clearInterval(poll);
        resolve();
      }
      refresh();
    });
    refresh();
    requestAnimationFrame(drawDemo);
  });
}

async function run(): Promise<void> {
  const api = new ApiClient();
  const status = el("status");

  show("screen-probe");
  const report = await probeCapability();
  const session = await api.createSession(report);

  if (session.status === "excluded" || !passesCapability({
    screenWidth: report.screen_width,
    screenHeight: report.screen_height,
    measuredFps: report.measured_fps,
  })) {
    show("screen-excluded");
    el("excluded-detail").textContent =
      `Your setup reported ${report.screen_width}px width at ` +
      `${report.measured_fps.toFixed(1)} FPS; the experiment needs at least ` +
      `1024px and 20 FPS.`;
    return;
  }

  show("screen-tutorial");
  await runTutorial();

  const playlist = await api.getPlaylist(session.session_id);
  const foveation = {
    sigma1Frac: playlist.foveation.sigma1_frac,
    sigmaWFrac: playlist.foveation.sigmaw_frac,
  };

  show("screen-player");
  const container = el("player-container");
  const video = el<HTMLVideoElement>("player-video");
  const canvas = el<HTMLCanvasElement>("player-canvas");
  bindFullscreenGuard(video, container);

  for (const [index, entry] of playlist.playlist.entries()) {
    status.textContent = `Video ${index + 1} of ${playlist.playlist.length}`;
    canvas.width = entry.width;
    canvas.height = entry.height;
    video.src = api.videoUrl(entry);
    await new Promise((resolve, reject) => {
      video.addEventListener("canplaythrough", resolve, { once: true });
      video.addEventListener("error", reject, { once: true });
      video.load();
    });
    const player = new FoveatedPlayer(video, canvas, foveation);
    const result = await player.play();
    try {
      await api.uploadTrace(session.session_id, entry.video_id, result.samples, result.renderFps);
    } catch (err) {
      if (err instanceof UploadFailedError) {
        status.textContent = `Upload for ${entry.video_id} failed; it was saved locally. ` +
          `Please check your connection and reload to retry.`;
        throw err;
      }
      throw err;
    }
  }

  const { completion_code } = await api.completeSession(session.session_id);
  show("screen-done");
  el("completion-code").textContent = completion_code;
}

run().catch((err) => {
  console.error(err);
  const status = document.getElementById("status");
  if (status) status.textContent = `Something went wrong: ${err}`;
});
