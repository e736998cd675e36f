import { describe, expect, it } from "vitest";

import { measureSustainedFps, passesCapability } from "../src/capability";

describe("passesCapability", () => {
  it("accepts the documented minimums", () => {
    expect(passesCapability({ screenWidth: 1024, screenHeight: 768, measuredFps: 60 })).toBe(true);
    expect(passesCapability({ screenWidth: 1024, screenHeight: 768, measuredFps: 20 })).toBe(true);
  });

  it("rejects an 800 px viewport", () => {
    expect(passesCapability({ screenWidth: 800, screenHeight: 600, measuredFps: 60 })).toBe(false);
  });

  it("rejects a throttled 15 FPS renderer", () => {
    expect(passesCapability({ screenWidth: 1920, screenHeight: 1080, measuredFps: 15 })).toBe(
      false
    );
  });

  it("rejects width 1023 (one pixel short)", () => {
    expect(passesCapability({ screenWidth: 1023, screenHeight: 768, measuredFps: 60 })).toBe(
      false
    );
  });
});

describe("measureSustainedFps", () => {
  it("reports the rate the render callback actually sustained", async () => {
    let clock = 0;
    const fps = await measureSustainedFps(
      () => {
        clock += 25; // each frame costs 25 ms -> 40 FPS
      },
      { durationMs: 3000, now: () => clock }
    );
    expect(fps).toBeCloseTo(40, 1);
  });

  it("insists on a probe of at least 3 seconds", async () => {
    await expect(measureSustainedFps(() => {}, { durationMs: 1000 })).rejects.toThrow(/3 seconds/);
  });

  it("hands the frame index to the renderer so the warm-up clip animates", async () => {
    let clock = 0;
    const seen: number[] = [];
    await measureSustainedFps(
      (frameIndex) => {
        seen.push(frameIndex);
        clock += 500;
      },
      { durationMs: 3000, now: () => clock }
    );
    expect(seen).toEqual([0, 1, 2, 3, 4, 5]);
  });
});
