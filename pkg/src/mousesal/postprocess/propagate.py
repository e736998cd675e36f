"""Temporal fixation propagation along estimated motion.

A fixation observed on frame t also says something about nearby frames:
it is copied to frames t +/- j (j <= window_k) with weight decay^j,
displaced along the per-frame block motion so it follows the content it
was attached to.  The temporal window is clipped silently at the video
boundaries.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from mousesal.core.types import WeightedFixations
from mousesal.postprocess.motion import MotionField
from mousesal.errors import ParameterError


def _step_positions(
    px: np.ndarray, py: np.ndarray, motion: MotionField, frame_idx: int, forward: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Advance pixel positions across one frame boundary.

    Forward from frame_idx - 1 to frame_idx adds that frame's vector;
    backward from frame_idx to frame_idx - 1 subtracts it.  The vector is
    looked up at the position being moved.
    """
    nx = np.empty_like(px)
    ny = np.empty_like(py)
    for i in range(len(px)):
        vx, vy = motion.vector_at(frame_idx, px[i], py[i])
        if forward:
            nx[i] = px[i] + vx
            ny[i] = py[i] + vy
        else:
            nx[i] = px[i] - vx
            ny[i] = py[i] - vy
    np.clip(nx, 0.0, motion.width, out=nx)
    np.clip(ny, 0.0, motion.height, out=ny)
    return nx, ny


def propagate_fixations(
    fixations_per_frame: Sequence[WeightedFixations],
    motion: MotionField,
    window_k: int,
    decay: float,
) -> list[WeightedFixations]:
    """Spread each frame's fixations into its temporal neighborhood.

    Returns one WeightedFixations per frame: the original fixations at
    their original weights, plus motion-displaced copies from up to
    window_k frames on each side weighted by decay^distance.
    """
    if window_k < 0:
        raise ParameterError(f"window_k must be >= 0, got {window_k}")
    if not (0.0 < decay <= 1.0):
        raise ParameterError(f"decay must be in (0, 1], got {decay}")
    n = len(fixations_per_frame)
    if motion.n_frames != n:
        raise ParameterError(
            f"motion field covers {motion.n_frames} frames, need {n}"
        )
    if window_k == 0:
        return list(fixations_per_frame)

    w_px = float(motion.width)
    h_px = float(motion.height)

    # trajectories[s][offset] = pixel positions of frame s's fixations at frame s + offset
    out = [fixations_per_frame[t] for t in range(n)]
    contributions: list[list[tuple[np.ndarray, np.ndarray]]] = [[] for _ in range(n)]
    for s in range(n):
        src = fixations_per_frame[s]
        if len(src) == 0:
            continue
        base_x = src.xy[:, 0] * w_px
        base_y = src.xy[:, 1] * h_px

        px, py = base_x.copy(), base_y.copy()
        for j in range(1, window_k + 1):
            t = s + j
            if t >= n:
                break
            px, py = _step_positions(px, py, motion, t, forward=True)
            xy = np.stack([px / w_px, py / h_px], axis=1)
            contributions[t].append((np.clip(xy, 0.0, 1.0), src.weights * decay**j))

        px, py = base_x.copy(), base_y.copy()
        for j in range(1, window_k + 1):
            t = s - j
            if t < 0:
                break
            px, py = _step_positions(px, py, motion, t + 1, forward=False)
            xy = np.stack([px / w_px, py / h_px], axis=1)
            contributions[t].append((np.clip(xy, 0.0, 1.0), src.weights * decay**j))

    result = []
    for t in range(n):
        wf = out[t]
        for xy, weights in contributions[t]:
            wf = wf.extended(xy, weights)
        result.append(wf)
    return result
