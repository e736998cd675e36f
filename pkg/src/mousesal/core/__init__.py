from mousesal.core.blur import gaussian_blur
from mousesal.core.foveation import (
    cursor_for_frame,
    foveated_blend,
    foveation_weights,
    render_foveated_video,
)
from mousesal.core.metrics import VideoSimilarity, similarity_score, video_similarity
from mousesal.core.raster import bin_traces, rasterize_fixations, rasterize_frames, rasterize_video
from mousesal.core.subsample import CurvePoint, subsample_curve
from mousesal.core.types import (
    FixationSample,
    FixationTrace,
    FoveationParams,
    RasterParams,
    SaliencyVideo,
    VideoMeta,
    WeightedFixations,
)

__all__ = [
    "CurvePoint",
    "FixationSample",
    "FixationTrace",
    "FoveationParams",
    "RasterParams",
    "SaliencyVideo",
    "VideoMeta",
    "VideoSimilarity",
    "WeightedFixations",
    "bin_traces",
    "cursor_for_frame",
    "foveated_blend",
    "foveation_weights",
    "gaussian_blur",
    "rasterize_fixations",
    "rasterize_frames",
    "rasterize_video",
    "render_foveated_video",
    "similarity_score",
    "subsample_curve",
    "video_similarity",
]
