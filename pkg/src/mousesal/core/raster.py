"""Fixation rasterization: sum of 2-D Gaussian densities per frame.

Each fixation contributes an isotropic Gaussian density (unit integral
over the continuous plane) centered at its position, evaluated at pixel
centers.  A map from N fixations is the plain sum of the N densities, so
rasterization is additive over fixation sets.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from mousesal.core.types import (
    FixationSample,
    FixationTrace,
    RasterParams,
    SaliencyVideo,
    VideoMeta,
    WeightedFixations,
)
from mousesal.errors import ConsistencyError, ParameterError


def _as_weighted(fixations, weights) -> WeightedFixations:
    if isinstance(fixations, WeightedFixations):
        if weights is not None:
            raise ParameterError("pass weights inside WeightedFixations, not separately")
        return fixations
    fixations = list(fixations)
    if fixations and isinstance(fixations[0], FixationSample):
        wf = WeightedFixations.from_samples(fixations)
        return WeightedFixations(wf.xy, weights) if weights is not None else wf
    xy = np.asarray(fixations, dtype=np.float64).reshape(-1, 2)
    return WeightedFixations(xy, weights)


def rasterize_fixations(
    fixations,
    width: int,
    height: int,
    params: RasterParams | None = None,
    weights=None,
) -> np.ndarray:
    """Rasterize one frame's fixations to a (height, width) saliency map.

    ``fixations`` may be FixationSamples, an (n, 2) array of normalized
    (x, y), or a WeightedFixations.  Gaussian sigma is
    ``params.sigma_frac * width`` pixels; contributions beyond the
    truncation radius are dropped.  An empty input yields an all-zero map.
    """
    params = params or RasterParams()
    if width <= 0 or height <= 0:
        raise ParameterError(f"dimensions must be positive, got {width}x{height}")
    wf = _as_weighted(fixations, weights)

    out = np.zeros((height, width), dtype=np.float64)
    if len(wf) == 0:
        return out

    sigma = params.sigma_frac * width
    radius = params.truncation_radius_sigmas * sigma
    norm = 1.0 / (2.0 * math.pi * sigma * sigma)
    inv_2s2 = 1.0 / (2.0 * sigma * sigma)

    for (x, y), w in zip(wf.xy, wf.weights):
        fx = x * width
        fy = y * height
        # pixel (ix, iy) sits at (ix + 0.5, iy + 0.5); keep |center - fix| <= radius
        x0 = max(0, int(math.ceil(fx - radius - 0.5)))
        x1 = min(width - 1, int(math.floor(fx + radius - 0.5)))
        y0 = max(0, int(math.ceil(fy - radius - 0.5)))
        y1 = min(height - 1, int(math.floor(fy + radius - 0.5)))
        if x0 > x1 or y0 > y1:
            continue
        dx = np.arange(x0, x1 + 1, dtype=np.float64) + 0.5 - fx
        dy = np.arange(y0, y1 + 1, dtype=np.float64) + 0.5 - fy
        gx = np.exp(-dx * dx * inv_2s2)
        gy = np.exp(-dy * dy * inv_2s2)
        out[y0 : y1 + 1, x0 : x1 + 1] += (w * norm) * np.outer(gy, gx)
    return out


def frame_index(t_ms: float, meta: VideoMeta) -> int:
    """Map a timestamp to its frame, clamping to the video's frame range."""
    idx = int(math.floor(t_ms * meta.fps / 1000.0))
    return min(max(idx, 0), meta.n_frames - 1)


def bin_traces(traces: Sequence[FixationTrace], meta: VideoMeta) -> list[WeightedFixations]:
    """Bin trace samples to frames by timestamp, unit weight per sample."""
    per_frame: list[list[tuple[float, float]]] = [[] for _ in range(meta.n_frames)]
    for trace in traces:
        for s in trace.samples:
            per_frame[frame_index(s.t_ms, meta)].append((s.x, s.y))
    return [WeightedFixations(np.array(pts, dtype=np.float64).reshape(-1, 2)) for pts in per_frame]


def rasterize_frames(
    per_frame: Sequence[WeightedFixations],
    meta: VideoMeta,
    params: RasterParams | None = None,
    video_id: str = "",
) -> SaliencyVideo:
    if len(per_frame) != meta.n_frames:
        raise ParameterError(
            f"expected fixations for {meta.n_frames} frames, got {len(per_frame)}"
        )
    frames = np.stack(
        [rasterize_fixations(wf, meta.width, meta.height, params) for wf in per_frame]
    )
    return SaliencyVideo(video_id, frames, meta.fps)


def rasterize_video(
    traces: Sequence[FixationTrace],
    meta: VideoMeta,
    params: RasterParams | None = None,
) -> SaliencyVideo:
    """Rasterize all traces of one video into a per-frame saliency sequence."""
    traces = list(traces)
    video_ids = {t.video_id for t in traces}
    if len(video_ids) > 1:
        raise ConsistencyError(f"traces reference multiple videos: {sorted(video_ids)}")
    video_id = video_ids.pop() if video_ids else ""
    return rasterize_frames(bin_traces(traces, meta), meta, params, video_id=video_id)
