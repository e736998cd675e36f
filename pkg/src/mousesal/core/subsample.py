"""Observer-subsampling evaluation: how map quality grows with observer count.

For each requested N, draw N observers at random, pool their fixations
into saliency maps, and score those maps against a ground-truth pool.
When the candidate and ground-truth observer sets coincide (eye-vs-eye
mode), the truth pool is the remaining M - N observers, so N must leave
a non-empty holdout; when the sets are disjoint (mouse-vs-eye mode), the
truth pool is all ground-truth observers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from mousesal.core.metrics import video_similarity
from mousesal.core.raster import rasterize_video
from mousesal.core.types import FixationTrace, RasterParams, VideoMeta
from mousesal.errors import ParameterError

TraceMap = Mapping[str, Sequence[FixationTrace]]


@dataclass(frozen=True)
class CurvePoint:
    n: int
    mean_sim: float
    std_sim: float


def _traces_for_video(traces_by_observer: TraceMap, video_id: str) -> dict[str, list[FixationTrace]]:
    out: dict[str, list[FixationTrace]] = {}
    for observer in sorted(traces_by_observer):
        matching = [t for t in traces_by_observer[observer] if t.video_id == video_id]
        if matching:
            out[observer] = matching
    return out


def subsample_curve(
    candidates: TraceMap,
    ground_truth: TraceMap,
    videos: Mapping[str, VideoMeta],
    n_values: Sequence[int],
    n_resamples: int,
    rng_seed: int,
    params: RasterParams | None = None,
) -> list[CurvePoint]:
    """Mean and std of the pooled-map similarity across seeded resamples.

    Scores are averaged per video first, then across videos, then across
    resamples; std is taken over the per-resample averages.
    """
    if n_resamples < 1:
        raise ParameterError(f"n_resamples must be >= 1, got {n_resamples}")
    if not videos:
        raise ParameterError("no videos given")

    cand_keys = set(candidates)
    truth_keys = set(ground_truth)
    if cand_keys == truth_keys:
        self_holdout = True
    elif not (cand_keys & truth_keys):
        self_holdout = False
    else:
        raise ParameterError(
            "candidate and ground-truth observer sets must either coincide or be disjoint"
        )

    video_ids = sorted(videos)
    per_video_cand = {v: _traces_for_video(candidates, v) for v in video_ids}
    per_video_truth = {v: _traces_for_video(ground_truth, v) for v in video_ids}

    for v in video_ids:
        available = len(per_video_cand[v])
        limit = available - 1 if self_holdout else available
        for n in n_values:
            if n < 1:
                raise ParameterError(f"N must be >= 1, got {n}")
            if n > limit:
                mode = "leaves an empty holdout" if self_holdout else "exceeds the observer pool"
                raise ParameterError(
                    f"N={n} {mode} for video {v!r} (max feasible N is {limit})"
                )
        if not self_holdout and not per_video_truth[v]:
            raise ParameterError(f"no ground-truth observers for video {v!r}")

    rng = np.random.default_rng(rng_seed)
    raster_cache: dict[tuple, object] = {}

    def pooled_map(video_id: str, observers: tuple[str, ...], table) -> object:
        key = (video_id, observers)
        if key not in raster_cache:
            pooled = [t for obs in observers for t in table[video_id][obs]]
            raster_cache[key] = rasterize_video(pooled, videos[video_id], params)
        return raster_cache[key]

    points = []
    for n in n_values:
        resample_scores = []
        for _ in range(n_resamples):
            video_scores = []
            for v in video_ids:
                observers = sorted(per_video_cand[v])
                drawn_idx = rng.choice(len(observers), size=n, replace=False)
                drawn = tuple(sorted(observers[i] for i in drawn_idx))
                cand_map = pooled_map(v, drawn, per_video_cand)
                if self_holdout:
                    remaining = tuple(o for o in observers if o not in drawn)
                    truth_map = pooled_map(v, remaining, per_video_truth)
                else:
                    truth_map = pooled_map(v, tuple(sorted(per_video_truth[v])), per_video_truth)
                video_scores.append(video_similarity(cand_map, truth_map).mean)
            resample_scores.append(float(np.mean(video_scores)))
        points.append(
            CurvePoint(int(n), float(np.mean(resample_scores)), float(np.std(resample_scores)))
        )
    return points
