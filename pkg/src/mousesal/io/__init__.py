from mousesal.io.framestore import (
    FrameStoreMeta,
    read_manifest,
    read_saliency_store,
    read_video_store,
    write_saliency_store,
    write_video_store,
)
from mousesal.io.motionfile import read_motion_field, write_motion_field
from mousesal.io.tracefile import TraceParseError, format_traces, parse_traces, read_traces, write_traces

__all__ = [
    "FrameStoreMeta",
    "TraceParseError",
    "format_traces",
    "parse_traces",
    "read_manifest",
    "read_motion_field",
    "read_saliency_store",
    "read_traces",
    "read_video_store",
    "write_motion_field",
    "write_saliency_store",
    "write_traces",
    "write_video_store",
]
