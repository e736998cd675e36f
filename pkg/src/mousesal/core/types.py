"""Domain types: fixation records, video metadata, and tuning parameters.

Image data is passed around as plain numpy arrays: a video frame is a
float array of shape (height, width) or (height, width, 3) with values
in [0, 1]; a saliency map is a non-negative float array of shape
(height, width).  Normalized coordinates (x, y) are fractions of frame
width/height in [0, 1]; the pixel with index (ix, iy) is centered at
continuous position (ix + 0.5, iy + 0.5).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from mousesal.errors import ConsistencyError, ParameterError

SOURCES = ("mouse", "eye")


@dataclass(frozen=True)
class FixationSample:
    """One timestamped attention point of one observer on one video."""

    observer_id: str
    video_id: str
    t_ms: int
    x: float
    y: float
    source: str = "mouse"

    def __post_init__(self) -> None:
        if self.t_ms < 0:
            raise ParameterError(f"t_ms must be >= 0, got {self.t_ms}")
        if not (0.0 <= self.x <= 1.0) or not (0.0 <= self.y <= 1.0):
            raise ParameterError(
                f"coordinates must lie in the unit square, got ({self.x}, {self.y})"
            )
        if self.source not in SOURCES:
            raise ParameterError(f"source must be one of {SOURCES}, got {self.source!r}")


@dataclass(frozen=True)
class FixationTrace:
    """Time-ordered samples of one observer viewing one video."""

    observer_id: str
    video_id: str
    source: str
    samples: tuple[FixationSample, ...]

    def __post_init__(self) -> None:
        for s in self.samples:
            if (s.observer_id, s.video_id, s.source) != (
                self.observer_id,
                self.video_id,
                self.source,
            ):
                raise ConsistencyError(
                    "all samples must share the trace's observer_id, video_id and source"
                )
        times = [s.t_ms for s in self.samples]
        if any(b < a for a, b in zip(times, times[1:])):
            raise ConsistencyError("samples must be non-decreasing in t_ms")

    @classmethod
    def from_samples(cls, samples: Iterable[FixationSample]) -> "FixationTrace":
        ordered = sorted(samples, key=lambda s: s.t_ms)
        if not ordered:
            raise ParameterError("cannot build a trace from zero samples")
        head = ordered[0]
        return cls(head.observer_id, head.video_id, head.source, tuple(ordered))

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class VideoMeta:
    """Frame geometry and timing of one video."""

    width: int
    height: int
    fps: float
    n_frames: int

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ParameterError(f"dimensions must be positive, got {self.width}x{self.height}")
        if self.fps <= 0:
            raise ParameterError(f"fps must be > 0, got {self.fps}")
        if self.n_frames <= 0:
            raise ParameterError(f"n_frames must be > 0, got {self.n_frames}")

    @property
    def duration_ms(self) -> float:
        return self.n_frames * 1000.0 / self.fps


@dataclass
class SaliencyVideo:
    """Per-frame saliency maps for one video, stacked as (n_frames, h, w)."""

    video_id: str
    frames: np.ndarray
    fps: float

    def __post_init__(self) -> None:
        self.frames = np.asarray(self.frames, dtype=np.float64)
        if self.frames.ndim != 3:
            raise ParameterError(
                f"frames must be a (n_frames, height, width) array, got shape {self.frames.shape}"
            )
        if self.fps <= 0:
            raise ParameterError(f"fps must be > 0, got {self.fps}")
        if not np.all(np.isfinite(self.frames)) or np.any(self.frames < 0):
            raise ParameterError("saliency values must be finite and non-negative")

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def height(self) -> int:
        return self.frames.shape[1]

    @property
    def width(self) -> int:
        return self.frames.shape[2]


@dataclass(frozen=True)
class FoveationParams:
    """Blur/blend constants of the mouse-contingent display, as fractions of frame width."""

    sigma1_frac: float = 0.02
    sigmaw_frac: float = 0.2

    def __post_init__(self) -> None:
        if self.sigma1_frac <= 0 or self.sigmaw_frac <= 0:
            raise ParameterError("sigma fractions must be > 0")


@dataclass(frozen=True)
class RasterParams:
    """Fixation-to-map Gaussian parameters.

    sigma_frac scales with frame width.  Kernels are cut off beyond
    truncation_radius_sigmas standard deviations from the fixation; the
    default keeps the dropped tail below 1e-6 of any retained value at
    typical map sizes.
    """

    sigma_frac: float = 0.0625
    truncation_radius_sigmas: float = 8.5

    def __post_init__(self) -> None:
        if self.sigma_frac <= 0:
            raise ParameterError("sigma_frac must be > 0")
        if self.truncation_radius_sigmas < 3:
            raise ParameterError("truncation_radius_sigmas must be >= 3")


class WeightedFixations:
    """Fixation positions for one frame with per-fixation weights.

    Positions are an (n, 2) float array of normalized (x, y); weights are
    an (n,) float array.  Rasterization multiplies each fixation's
    Gaussian by its weight.
    """

    __slots__ = ("xy", "weights")

    def __init__(self, xy=None, weights=None):
        xy = np.zeros((0, 2), dtype=np.float64) if xy is None else np.asarray(xy, dtype=np.float64)
        if xy.ndim != 2 or xy.shape[1] != 2:
            raise ParameterError(f"xy must have shape (n, 2), got {xy.shape}")
        if weights is None:
            weights = np.ones(len(xy), dtype=np.float64)
        else:
            weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (len(xy),):
            raise ParameterError("weights must be one scalar per fixation")
        if len(xy) and (xy.min() < 0.0 or xy.max() > 1.0):
            raise ParameterError("fixation coordinates must lie in the unit square")
        if len(weights) and weights.min() < 0.0:
            raise ParameterError("weights must be non-negative")
        self.xy = xy
        self.weights = weights

    @classmethod
    def from_samples(cls, samples: Sequence[FixationSample]) -> "WeightedFixations":
        xy = np.array([(s.x, s.y) for s in samples], dtype=np.float64).reshape(-1, 2)
        return cls(xy)

    def extended(self, xy: np.ndarray, weights: np.ndarray) -> "WeightedFixations":
        return WeightedFixations(
            np.concatenate([self.xy, np.asarray(xy, dtype=np.float64).reshape(-1, 2)]),
            np.concatenate([self.weights, np.asarray(weights, dtype=np.float64).ravel()]),
        )

    def __len__(self) -> int:
        return len(self.xy)

    def total_weight(self) -> float:
        return float(self.weights.sum())
