"""Separable Gaussian blur with replicate (edge-clamp) borders."""

from __future__ import annotations

import numpy as np
from scipy.ndimage import correlate1d

from mousesal.errors import ParameterError

# Taps beyond this many sigmas are dropped.  5 keeps the truncated tail
# below ~3e-7 of the kernel mass, so an impulse response still matches the
# continuous density 1/(2*pi*sigma^2) to better than 1e-5 relative.
KERNEL_TRUNCATE_SIGMAS = 5.0


def kernel_radius(sigma: float, truncate: float = KERNEL_TRUNCATE_SIGMAS) -> int:
    return max(1, int(truncate * sigma + 0.5))


def gaussian_kernel1d(sigma: float, radius: int) -> np.ndarray:
    """Discrete Gaussian taps at integer offsets, normalized to sum to 1."""
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def gaussian_blur(frame: np.ndarray, sigma: float) -> np.ndarray:
    """Blur a (h, w) or (h, w, c) frame with an isotropic Gaussian of ``sigma`` pixels.

    The kernel is normalized, so constant regions pass through unchanged
    and every output pixel is a convex combination of inputs.  Borders
    replicate the nearest edge pixel.
    """
    if sigma <= 0:
        raise ParameterError(f"sigma must be > 0, got {sigma}")
    arr = np.asarray(frame, dtype=np.float64)
    if arr.ndim not in (2, 3):
        raise ParameterError(f"frame must be 2-D or 3-D, got shape {arr.shape}")
    k = gaussian_kernel1d(sigma, kernel_radius(sigma))
    out = correlate1d(arr, k, axis=0, mode="nearest")
    out = correlate1d(out, k, axis=1, mode="nearest")
    return out
