"""Mouse-contingent foveated display: cursor-centered blend of sharp and blurred layers.

The displayed frame is ``out = W * sharp + (1 - W) * blurred`` where the
per-pixel weight ``W = exp(-d^2 / (2 * sigma_w^2))`` falls off with the
pixel's distance ``d`` (in pixels) from the cursor.  ``sigma_w`` and the
blur sigma scale with frame width so the foveal region is
resolution-independent.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from mousesal.core.blur import gaussian_blur
from mousesal.core.types import FixationTrace, FoveationParams
from mousesal.errors import ParameterError, ShapeMismatchError

FRAME_CENTER = (0.5, 0.5)


def _check_cursor(cursor) -> tuple[float, float]:
    x, y = float(cursor[0]), float(cursor[1])
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ParameterError(f"cursor must lie in the unit square, got ({x}, {y})")
    return x, y


def foveation_weights(
    width: int,
    height: int,
    cursor: tuple[float, float],
    params: FoveationParams | None = None,
) -> np.ndarray:
    """Per-pixel blend weights in [0, 1] for a cursor at normalized (x, y).

    The cursor maps to pixel position (x * width, y * height); pixel
    (ix, iy) is measured from its center (ix + 0.5, iy + 0.5).
    """
    params = params or FoveationParams()
    x, y = _check_cursor(cursor)
    gx = x * width
    gy = y * height
    sigma_w = params.sigmaw_frac * width
    px = np.arange(width, dtype=np.float64) + 0.5
    py = np.arange(height, dtype=np.float64) + 0.5
    d2 = (px[np.newaxis, :] - gx) ** 2 + (py[:, np.newaxis] - gy) ** 2
    return np.exp(-d2 / (2.0 * sigma_w * sigma_w))


def foveated_blend(
    sharp: np.ndarray,
    blurred: np.ndarray,
    cursor: tuple[float, float],
    params: FoveationParams | None = None,
) -> np.ndarray:
    """Blend the sharp and blurred layers around the cursor position."""
    sharp = np.asarray(sharp, dtype=np.float64)
    blurred = np.asarray(blurred, dtype=np.float64)
    if sharp.shape != blurred.shape:
        raise ShapeMismatchError(
            f"sharp and blurred frames differ in shape: {sharp.shape} vs {blurred.shape}"
        )
    if sharp.ndim not in (2, 3):
        raise ParameterError(f"frames must be 2-D or 3-D, got shape {sharp.shape}")
    height, width = sharp.shape[:2]
    w = foveation_weights(width, height, cursor, params)
    if sharp.ndim == 3:
        w = w[:, :, np.newaxis]
    return w * sharp + (1.0 - w) * blurred


def cursor_for_frame(trace: FixationTrace, frame_idx: int, fps: float) -> tuple[float, float]:
    """Cursor position in effect at frame ``frame_idx``: the most recent
    sample at or before the frame's timestamp, or the frame center before
    the first sample."""
    t = frame_idx * 1000.0 / fps
    times = np.array([s.t_ms for s in trace.samples], dtype=np.float64)
    i = int(np.searchsorted(times, t, side="right")) - 1
    if i < 0:
        return FRAME_CENTER
    s = trace.samples[i]
    return (s.x, s.y)


def render_foveated_video(
    frames: Sequence[np.ndarray],
    trace: FixationTrace,
    fps: float,
    params: FoveationParams | None = None,
) -> list[np.ndarray]:
    """Offline reference renderer: blur each frame with sigma1 and blend at
    the cursor position selected by the hold-last-sample rule."""
    params = params or FoveationParams()
    frames = list(frames)
    if not frames:
        raise ParameterError("frame sequence is empty")
    if fps <= 0:
        raise ParameterError(f"fps must be > 0, got {fps}")
    out = []
    for idx, frame in enumerate(frames):
        frame = np.asarray(frame, dtype=np.float64)
        sigma1 = params.sigma1_frac * frame.shape[1]
        blurred = gaussian_blur(frame, sigma1)
        cursor = cursor_for_frame(trace, idx, fps)
        out.append(foveated_blend(frame, blurred, cursor, params))
    return out
