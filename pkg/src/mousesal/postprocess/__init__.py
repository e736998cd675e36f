from mousesal.postprocess.fit import GridSpec, fit_postprocess
from mousesal.postprocess.motion import MotionField, estimate_motion
from mousesal.postprocess.propagate import propagate_fixations
from mousesal.postprocess.transform import PostprocessParams, apply_postprocess, center_prior

__all__ = [
    "GridSpec",
    "MotionField",
    "PostprocessParams",
    "apply_postprocess",
    "center_prior",
    "estimate_motion",
    "fit_postprocess",
    "propagate_fixations",
]
