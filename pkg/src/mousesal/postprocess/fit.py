"""Grid-search fitting of the postprocessing transform against ground truth.

The 4-D grid (gamma, alpha, beta, center_sigma_frac) is searched
exhaustively for the combination maximizing the mean similarity between
transformed inputs and their ground-truth videos.  Evaluation order is
fixed and the first strictly-better score wins, so results are
deterministic.  The default grid includes the identity transform
(gamma=1, alpha=1, beta=0), so fitting can never underperform it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from mousesal.core.metrics import video_similarity
from mousesal.core.types import SaliencyVideo
from mousesal.errors import ParameterError, UndefinedMetricError
from mousesal.postprocess.transform import PostprocessParams, apply_postprocess


@dataclass(frozen=True)
class GridSpec:
    """Search space of the fit; window_k and decay ride along unfitted."""

    gammas: tuple[float, ...] = (0.5, 0.75, 1.0, 1.5, 2.0)
    alphas: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 1.0)
    betas: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 1.0)
    center_sigma_fracs: tuple[float, ...] = (0.15, 0.25, 0.35)
    window_k: int = 2
    decay: float = 0.8

    def combinations(self):
        """Valid parameter combinations in ascending iteration order."""
        for gamma in self.gammas:
            for alpha in self.alphas:
                for beta in self.betas:
                    if alpha + beta <= 0:
                        continue
                    for csf in self.center_sigma_fracs:
                        yield PostprocessParams(
                            window_k=self.window_k,
                            decay=self.decay,
                            gamma=gamma,
                            alpha=alpha,
                            beta=beta,
                            center_sigma_frac=csf,
                        )


def fit_postprocess(
    inputs: Sequence[SaliencyVideo],
    truths: Sequence[SaliencyVideo],
    grid: GridSpec | None = None,
    rng_seed: int | None = None,
) -> tuple[PostprocessParams, float]:
    """Return the grid point maximizing mean similarity over training pairs.

    rng_seed is accepted for interface stability; the exhaustive search
    itself is deterministic and does not consume randomness.
    """
    del rng_seed
    grid = grid or GridSpec()
    inputs = list(inputs)
    truths = list(truths)
    if not inputs:
        raise ParameterError("training set is empty")
    if len(inputs) != len(truths):
        raise ParameterError(
            f"inputs and truths must pair up, got {len(inputs)} vs {len(truths)}"
        )
    for sm, truth in zip(inputs, truths):
        if sm.frames.shape != truth.frames.shape:
            raise ParameterError(
                f"video {sm.video_id!r}: input shape {sm.frames.shape} does not match "
                f"truth shape {truth.frames.shape}"
            )

    best_params = None
    best_score = -np.inf
    for params in grid.combinations():
        scores = []
        try:
            for sm, truth in zip(inputs, truths):
                scores.append(video_similarity(apply_postprocess(sm, params), truth).mean)
        except UndefinedMetricError:
            continue  # e.g. beta=0 on all-zero inputs: nothing to score
        score = float(np.mean(scores))
        if score > best_score:
            best_score = score
            best_params = params
    if best_params is None:
        raise UndefinedMetricError("no grid point produced a scorable transform")
    return best_params, best_score
