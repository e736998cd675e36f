"""Similarity Score between saliency maps (histogram intersection).

Both maps are normalized to sum to 1 and compared by the sum of
per-pixel minima: 1 means identical distributions, 0 means disjoint
support.  The score is symmetric and invariant to positive scaling of
either input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mousesal.core.types import SaliencyVideo
from mousesal.errors import ShapeMismatchError, UndefinedMetricError


def similarity_score(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"maps differ in shape: {a.shape} vs {b.shape}")
    sa = a.sum()
    sb = b.sum()
    if sa <= 0.0 or sb <= 0.0:
        raise UndefinedMetricError("similarity is undefined for an all-zero map")
    return float(np.minimum(a / sa, b / sb).sum())


@dataclass(frozen=True)
class VideoSimilarity:
    """Per-video similarity report: mean over valid frames, with skips counted."""

    mean: float
    frame_scores: tuple  # one float per frame, None where either map was all-zero
    skipped: int

    @property
    def n_valid(self) -> int:
        return sum(1 for s in self.frame_scores if s is not None)


def video_similarity(a: SaliencyVideo, b: SaliencyVideo) -> VideoSimilarity:
    """Mean per-frame similarity; frames where either map is all-zero are skipped."""
    if a.frames.shape != b.frames.shape:
        raise ShapeMismatchError(
            f"videos differ in shape: {a.frames.shape} vs {b.frames.shape}"
        )
    scores: list[float | None] = []
    skipped = 0
    for fa, fb in zip(a.frames, b.frames):
        if fa.sum() <= 0.0 or fb.sum() <= 0.0:
            scores.append(None)
            skipped += 1
        else:
            scores.append(similarity_score(fa, fb))
    valid = [s for s in scores if s is not None]
    if not valid:
        raise UndefinedMetricError("no frame has a non-zero map on both sides")
    return VideoSimilarity(float(np.mean(valid)), tuple(scores), skipped)
