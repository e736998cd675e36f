"""Frame stores: a directory of numbered netpbm images plus a JSON manifest.

Decouples the toolkit from video codecs: frames are pre-extracted by any
external tool into this layout.  Video frames are stored as 8-bit PGM
(gray) or PPM (color); saliency frames as 16-bit PGM scaled so the
per-video maximum maps to 65535, with the true maximum recorded in the
manifest so values invert exactly (error bounded by half a 16-bit step
of the per-video max).
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from mousesal.core.types import SaliencyVideo, VideoMeta
from mousesal.errors import ParameterError

MANIFEST_NAME = "manifest.json"
FRAME_PATTERN = "frame_{:06d}.{}"


@dataclass(frozen=True)
class FrameStoreMeta:
    width: int
    height: int
    fps: float
    n_frames: int
    kind: str  # "video" | "saliency"
    channels: int
    bit_depth: int
    video_id: str = ""
    true_max: float | None = None

    def video_meta(self) -> VideoMeta:
        return VideoMeta(self.width, self.height, self.fps, self.n_frames)


def _write_netpbm(path: Path, arr: np.ndarray, maxval: int) -> None:
    if arr.ndim == 2:
        magic = b"P5"
    elif arr.ndim == 3 and arr.shape[2] == 3:
        magic = b"P6"
    else:
        raise ParameterError(f"cannot store array of shape {arr.shape}")
    h, w = arr.shape[:2]
    header = magic + f"\n{w} {h}\n{maxval}\n".encode("ascii")
    dtype = ">u2" if maxval > 255 else "u1"
    path.write_bytes(header + arr.astype(dtype).tobytes())


def _read_netpbm(path: Path) -> tuple[np.ndarray, int]:
    data = path.read_bytes()
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    pos += 1  # single whitespace after maxval
    magic, w_raw, h_raw, maxval_raw = fields
    if magic not in (b"P5", b"P6"):
        raise ParameterError(f"{path}: unsupported netpbm type {magic!r}")
    w, h, maxval = int(w_raw), int(h_raw), int(maxval_raw)
    channels = 3 if magic == b"P6" else 1
    dtype = ">u2" if maxval > 255 else "u1"
    count = w * h * channels
    arr = np.frombuffer(data, dtype=dtype, count=count, offset=pos).astype(np.uint16)
    shape = (h, w, 3) if channels == 3 else (h, w)
    return arr.reshape(shape), maxval


def _frame_path(directory: Path, idx: int, channels: int) -> Path:
    ext = "ppm" if channels == 3 else "pgm"
    return directory / FRAME_PATTERN.format(idx, ext)


def read_manifest(directory: str | os.PathLike) -> FrameStoreMeta:
    directory = Path(directory)
    manifest = directory / MANIFEST_NAME
    if not manifest.is_file():
        raise ParameterError(f"no {MANIFEST_NAME} in {directory}")
    raw = json.loads(manifest.read_text(encoding="utf-8"))
    meta = FrameStoreMeta(**raw)
    for idx in range(meta.n_frames):
        if not _frame_path(directory, idx, meta.channels).is_file():
            raise ParameterError(f"{directory}: missing frame {idx} listed in manifest")
    return meta


def _write_manifest(directory: Path, meta: FrameStoreMeta) -> None:
    payload = {k: v for k, v in asdict(meta).items() if v is not None}
    (directory / MANIFEST_NAME).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def write_video_store(
    directory: str | os.PathLike,
    frames,
    fps: float,
    video_id: str = "",
) -> FrameStoreMeta:
    """Store [0, 1] video frames as 8-bit netpbm files."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    frames = [np.asarray(f, dtype=np.float64) for f in frames]
    if not frames:
        raise ParameterError("no frames to write")
    h, w = frames[0].shape[:2]
    channels = 3 if frames[0].ndim == 3 else 1
    for idx, frame in enumerate(frames):
        if frame.shape[:2] != (h, w) or (3 if frame.ndim == 3 else 1) != channels:
            raise ParameterError("all frames must share dimensions and channels")
        quant = np.clip(np.rint(frame * 255.0), 0, 255)
        _write_netpbm(_frame_path(directory, idx, channels), quant, 255)
    meta = FrameStoreMeta(w, h, float(fps), len(frames), "video", channels, 8, video_id)
    _write_manifest(directory, meta)
    return meta


def read_video_store(directory: str | os.PathLike) -> tuple[list[np.ndarray], FrameStoreMeta]:
    directory = Path(directory)
    meta = read_manifest(directory)
    if meta.kind != "video":
        raise ParameterError(f"{directory} holds {meta.kind!r} frames, expected video")
    frames = []
    for idx in range(meta.n_frames):
        arr, maxval = _read_netpbm(_frame_path(directory, idx, meta.channels))
        frames.append(arr.astype(np.float64) / maxval)
    return frames, meta


def write_saliency_store(directory: str | os.PathLike, sm: SaliencyVideo) -> FrameStoreMeta:
    """Store a saliency video as 16-bit PGM scaled to the per-video maximum."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    true_max = float(sm.frames.max())
    scale = 65535.0 / true_max if true_max > 0 else 0.0
    for idx in range(sm.n_frames):
        quant = np.clip(np.rint(sm.frames[idx] * scale), 0, 65535)
        _write_netpbm(_frame_path(directory, idx, 1), quant, 65535)
    meta = FrameStoreMeta(
        sm.width, sm.height, float(sm.fps), sm.n_frames, "saliency", 1, 16, sm.video_id, true_max
    )
    _write_manifest(directory, meta)
    return meta


def read_saliency_store(directory: str | os.PathLike) -> SaliencyVideo:
    directory = Path(directory)
    meta = read_manifest(directory)
    if meta.kind != "saliency":
        raise ParameterError(f"{directory} holds {meta.kind!r} frames, expected saliency")
    true_max = meta.true_max if meta.true_max is not None else 1.0
    frames = np.empty((meta.n_frames, meta.height, meta.width), dtype=np.float64)
    for idx in range(meta.n_frames):
        arr, maxval = _read_netpbm(_frame_path(directory, idx, 1))
        frames[idx] = arr.astype(np.float64) / maxval * true_max
    return SaliencyVideo(meta.video_id, frames, meta.fps)
