"""Block-matching motion estimation (exhaustive SAD search).

A motion vector (vx, vy) at a block of frame t is the displacement of
that block's content since frame t-1: the block at pixel position p in
frame t best matches the patch at p - v in frame t-1.  Frame 0 has no
predecessor and carries zero vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from mousesal.errors import ParameterError


@dataclass
class MotionField:
    """Per-frame grid of displacement vectors.

    vectors has shape (n_frames, grid_h, grid_w, 2) with components
    (vx, vy) in pixels; the grid covers the frame in block_size tiles
    (ceil division, so edge tiles may be ragged).
    """

    width: int
    height: int
    block_size: int
    vectors: np.ndarray

    def __post_init__(self) -> None:
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        gh = -(-self.height // self.block_size)
        gw = -(-self.width // self.block_size)
        if self.vectors.ndim != 4 or self.vectors.shape[1:] != (gh, gw, 2):
            raise ParameterError(
                f"vectors must have shape (n_frames, {gh}, {gw}, 2), got {self.vectors.shape}"
            )
        if not np.all(np.isfinite(self.vectors)):
            raise ParameterError("motion vectors must be finite")

    @property
    def n_frames(self) -> int:
        return self.vectors.shape[0]

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.vectors.shape[1], self.vectors.shape[2]

    @classmethod
    def zero(cls, width: int, height: int, block_size: int, n_frames: int) -> "MotionField":
        gh = -(-height // block_size)
        gw = -(-width // block_size)
        return cls(width, height, block_size, np.zeros((n_frames, gh, gw, 2)))

    def vector_at(self, frame_idx: int, px: float, py: float) -> tuple[float, float]:
        """Vector of the block containing pixel position (px, py), clamped to the grid."""
        gh, gw = self.grid_shape
        bx = min(max(int(px // self.block_size), 0), gw - 1)
        by = min(max(int(py // self.block_size), 0), gh - 1)
        v = self.vectors[frame_idx, by, bx]
        return float(v[0]), float(v[1])


def _luma(frame: np.ndarray) -> np.ndarray:
    arr = np.asarray(frame, dtype=np.float64)
    if arr.ndim == 3:
        return arr.sum(axis=2)
    if arr.ndim == 2:
        return arr
    raise ParameterError(f"frame must be 2-D or 3-D, got shape {arr.shape}")


def _candidate_order(search_radius: int) -> list[tuple[int, int]]:
    # ties resolve toward zero displacement, then smallest (dy, dx)
    offsets = [
        (dy, dx)
        for dy in range(-search_radius, search_radius + 1)
        for dx in range(-search_radius, search_radius + 1)
    ]
    offsets.sort(key=lambda o: (o[0] * o[0] + o[1] * o[1], o[0], o[1]))
    return offsets


def estimate_motion(
    frames: Sequence[np.ndarray],
    block_size: int = 16,
    search_radius: int = 8,
) -> MotionField:
    """Estimate block motion between consecutive frames by full SAD search.

    Out-of-frame reference patches are read through replicated edges, so
    every candidate displacement in the search window is valid.
    """
    frames = [_luma(f) for f in frames]
    if len(frames) < 2:
        raise ParameterError("motion estimation needs at least 2 frames")
    if block_size < 4:
        raise ParameterError(f"block_size must be >= 4, got {block_size}")
    if search_radius < 0:
        raise ParameterError(f"search_radius must be >= 0, got {search_radius}")
    height, width = frames[0].shape
    for f in frames[1:]:
        if f.shape != (height, width):
            raise ParameterError("all frames must share dimensions")

    field = MotionField.zero(width, height, block_size, len(frames))
    if search_radius == 0:
        return field

    candidates = _candidate_order(search_radius)
    gh, gw = field.grid_shape
    r = search_radius
    for t in range(1, len(frames)):
        cur = frames[t]
        prev = np.pad(frames[t - 1], r, mode="edge")
        for by in range(gh):
            ys = by * block_size
            ye = min(ys + block_size, height)
            for bx in range(gw):
                xs = bx * block_size
                xe = min(xs + block_size, width)
                block = cur[ys:ye, xs:xe]
                best_sad = np.inf
                best = (0, 0)
                for dy, dx in candidates:
                    # patch at p - v in the previous frame, offset by r for padding
                    ref = prev[ys - dy + r : ye - dy + r, xs - dx + r : xe - dx + r]
                    sad = float(np.abs(block - ref).sum())
                    if sad < best_sad:
                        best_sad = sad
                        best = (dx, dy)
                field.vectors[t, by, bx, 0] = best[0]
                field.vectors[t, by, bx, 1] = best[1]
    return field
