"""Mouse-tracking saliency toolkit.

Collects cursor traces from a mouse-contingent video player, turns them
into per-frame saliency maps, evaluates them against eye-tracking ground
truth, and improves them with a fitted classical postprocessing chain.
"""

from mousesal.core.types import (
    FixationSample,
    FixationTrace,
    FoveationParams,
    RasterParams,
    SaliencyVideo,
    VideoMeta,
    WeightedFixations,
)

__version__ = "0.1.0"

__all__ = [
    "FixationSample",
    "FixationTrace",
    "FoveationParams",
    "RasterParams",
    "SaliencyVideo",
    "VideoMeta",
    "WeightedFixations",
    "__version__",
]
