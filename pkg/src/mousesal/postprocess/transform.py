"""Brightness (gamma) correction and center-prior blending of saliency maps.

Each frame is max-normalized to peak 1 (all-zero frames stay zero),
raised to a gamma exponent, and mixed with a centered Gaussian prior:

    out = alpha * normalized^gamma + beta * center_prior
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mousesal.core.types import SaliencyVideo
from mousesal.errors import ParameterError


@dataclass(frozen=True)
class PostprocessParams:
    """Fitted coefficients of the semiautomatic transform.

    window_k and decay drive the temporal propagation stage (see
    propagate_fixations); the remaining fields drive apply_postprocess.
    """

    window_k: int = 2
    decay: float = 0.8
    gamma: float = 1.0
    alpha: float = 1.0
    beta: float = 0.0
    center_sigma_frac: float = 0.25

    def __post_init__(self) -> None:
        if self.window_k < 0:
            raise ParameterError(f"window_k must be >= 0, got {self.window_k}")
        if not (0.0 < self.decay <= 1.0):
            raise ParameterError(f"decay must be in (0, 1], got {self.decay}")
        if self.gamma <= 0:
            raise ParameterError(f"gamma must be > 0, got {self.gamma}")
        if not (0.0 <= self.alpha <= 1.0) or not (0.0 <= self.beta <= 1.0):
            raise ParameterError("alpha and beta must lie in [0, 1]")
        if self.alpha + self.beta <= 0:
            raise ParameterError("alpha + beta must be > 0")
        if self.center_sigma_frac <= 0:
            raise ParameterError(f"center_sigma_frac must be > 0, got {self.center_sigma_frac}")


def center_prior(width: int, height: int, sigma_frac: float) -> np.ndarray:
    """Centered 2-D Gaussian with peak 1 and sigma = sigma_frac * width pixels."""
    if width <= 0 or height <= 0:
        raise ParameterError(f"dimensions must be positive, got {width}x{height}")
    if sigma_frac <= 0:
        raise ParameterError(f"sigma_frac must be > 0, got {sigma_frac}")
    sigma = sigma_frac * width
    px = np.arange(width, dtype=np.float64) + 0.5 - width / 2.0
    py = np.arange(height, dtype=np.float64) + 0.5 - height / 2.0
    d2 = px[np.newaxis, :] ** 2 + py[:, np.newaxis] ** 2
    return np.exp(-d2 / (2.0 * sigma * sigma))


def peak_normalized(frame: np.ndarray) -> np.ndarray:
    peak = frame.max()
    return frame / peak if peak > 0 else frame


def apply_postprocess(sm: SaliencyVideo, params: PostprocessParams) -> SaliencyVideo:
    """Transform every frame of a saliency video; output is bounded by alpha + beta."""
    prior = center_prior(sm.width, sm.height, params.center_sigma_frac)
    out = np.empty_like(sm.frames)
    for i, frame in enumerate(sm.frames):
        out[i] = params.alpha * peak_normalized(frame) ** params.gamma + params.beta * prior
    return SaliencyVideo(sm.video_id, out, sm.fps)
