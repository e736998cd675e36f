"""Shared test oracles and synthetic data generators.

The oracles here are deliberately naive (dense loops, no truncation, no
separability tricks) so they stay independent of the library's fast
paths.
"""

from __future__ import annotations

import math

import numpy as np

from mousesal.core.blur import gaussian_kernel1d, kernel_radius
from mousesal.core.types import FixationSample, FixationTrace, VideoMeta


def dense_blur_2d(frame: np.ndarray, sigma: float) -> np.ndarray:
    """Direct 2-D convolution with the normalized truncated Gaussian kernel
    and replicated edges."""
    radius = kernel_radius(sigma)
    k1 = gaussian_kernel1d(sigma, radius)
    kernel = np.outer(k1, k1)
    if frame.ndim == 3:
        return np.stack(
            [dense_blur_2d(frame[:, :, c], sigma) for c in range(frame.shape[2])], axis=2
        )
    padded = np.pad(frame, radius, mode="edge")
    h, w = frame.shape
    out = np.zeros_like(frame, dtype=np.float64)
    for y in range(h):
        for x in range(w):
            out[y, x] = (padded[y : y + 2 * radius + 1, x : x + 2 * radius + 1] * kernel).sum()
    return out


def brute_blend(sharp, blurred, cursor, sigma_w_frac=0.2):
    """Per-pixel evaluation of the foveated blend formula."""
    height, width = sharp.shape[:2]
    gx = cursor[0] * width
    gy = cursor[1] * height
    sigma_w = sigma_w_frac * width
    out = np.empty_like(sharp, dtype=np.float64)
    for iy in range(height):
        for ix in range(width):
            d2 = (ix + 0.5 - gx) ** 2 + (iy + 0.5 - gy) ** 2
            w = math.exp(-d2 / (2.0 * sigma_w**2))
            out[iy, ix] = w * sharp[iy, ix] + (1.0 - w) * blurred[iy, ix]
    return out


def dense_raster(xy, width, height, sigma, weights=None):
    """Untruncated per-pixel sum of Gaussian densities."""
    xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
    if weights is None:
        weights = np.ones(len(xy))
    out = np.zeros((height, width), dtype=np.float64)
    norm = 1.0 / (2.0 * math.pi * sigma**2)
    for (x, y), w in zip(xy, weights):
        fx = x * width
        fy = y * height
        for iy in range(height):
            for ix in range(width):
                d2 = (ix + 0.5 - fx) ** 2 + (iy + 0.5 - fy) ** 2
                out[iy, ix] += w * norm * math.exp(-d2 / (2.0 * sigma**2))
    return out


def mixture_centers(n_frames: int):
    """Two smoothly moving attention centers shared by all synthetic observers."""
    t = np.arange(n_frames) / max(n_frames - 1, 1)
    c1 = np.stack([0.35 + 0.15 * np.sin(2 * np.pi * t), 0.45 + 0.10 * np.cos(2 * np.pi * t)], axis=1)
    c2 = np.stack([0.65 - 0.10 * np.sin(2 * np.pi * t), 0.55 + 0.15 * np.sin(4 * np.pi * t)], axis=1)
    return c1, c2


def synth_observers(
    n_observers: int,
    meta: VideoMeta,
    rng: np.random.Generator,
    video_id: str = "vid",
    source: str = "eye",
    jitter: float = 0.06,
    prefix: str = "obs",
) -> dict[str, list[FixationTrace]]:
    """Observers drawn i.i.d. from a common two-component attention process."""
    c1, c2 = mixture_centers(meta.n_frames)
    out = {}
    for i in range(n_observers):
        samples = []
        for f in range(meta.n_frames):
            center = c1[f] if rng.random() < 0.6 else c2[f]
            x = float(np.clip(center[0] + rng.normal(0, jitter), 0.0, 1.0))
            y = float(np.clip(center[1] + rng.normal(0, jitter), 0.0, 1.0))
            t_ms = int(round(f * 1000.0 / meta.fps))
            samples.append(FixationSample(f"{prefix}{i:02d}", video_id, t_ms, x, y, source))
        out[f"{prefix}{i:02d}"] = [FixationTrace.from_samples(samples)]
    return out
