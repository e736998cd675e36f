/**
 * Admission checks: screen geometry and sustained render rate.
 *
 * The frame-rate probe drives the real blur pipeline on a warm-up clip
 * for several seconds; an empty loop would overstate what the machine
 * can do once the per-frame blur and blend are in the path.
 */

export interface CapabilityReport {
  screenWidth: number;
  screenHeight: number;
  measuredFps: number;
}

export interface CapabilityThresholds {
  minScreenWidth: number;
  minFps: number;
}

export const DEFAULT_THRESHOLDS: CapabilityThresholds = { minScreenWidth: 1024, minFps: 20 };

export function passesCapability(
  report: CapabilityReport,
  thresholds: CapabilityThresholds = DEFAULT_THRESHOLDS
): boolean {
  return (
    report.screenWidth >= thresholds.minScreenWidth && report.measuredFps >= thresholds.minFps
  );
}

export interface FpsProbeOptions {
  /** how long to keep rendering; the admission contract wants >= 3 s */
  durationMs?: number;
  /** clock, injectable for tests */
  now?: () => number;
  /** yield between frames (rAF in the browser, immediate in tests) */
  nextFrame?: () => Promise<void>;
}

/**
 * Render frames back to back for the probe window and report the
 * sustained rate.  renderFrame receives the frame index so the caller
 * can animate the warm-up clip.
 */
export async function measureSustainedFps(
  renderFrame: (frameIndex: number) => void,
  options: FpsProbeOptions = {}
): Promise<number> {
  const durationMs = options.durationMs ?? 3000;
  const now = options.now ?? (() => performance.now());
  const nextFrame = options.nextFrame ?? (() => Promise.resolve());
  if (durationMs < 3000) throw new Error("probe must run for at least 3 seconds");
  const start = now();
  let frames = 0;
  let elapsed = 0;
  for (;;) {
    renderFrame(frames);
    frames++;
    elapsed = now() - start;
    if (elapsed >= durationMs) break;
    await nextFrame();
  }
  return (frames * 1000) / elapsed;
}
