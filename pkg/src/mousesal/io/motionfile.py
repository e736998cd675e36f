"""Binary interchange format for motion fields.

Layout: the magic line b"MSMF1\\n", one JSON header line describing the
grid, then the raw vector array as little-endian float32 in C order with
shape (n_frames, grid_h, grid_w, 2) and components (vx, vy).
"""

from __future__ import annotations

import json
import os

import numpy as np

from mousesal.errors import ParameterError
from mousesal.postprocess.motion import MotionField

MAGIC = b"MSMF1\n"


def write_motion_field(path: str | os.PathLike, field: MotionField) -> None:
    gh, gw = field.grid_shape
    header = {
        "width": field.width,
        "height": field.height,
        "block_size": field.block_size,
        "n_frames": field.n_frames,
        "grid_h": gh,
        "grid_w": gw,
    }
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(json.dumps(header, sort_keys=True).encode("ascii") + b"\n")
        fh.write(field.vectors.astype("<f4").tobytes())


def read_motion_field(path: str | os.PathLike) -> MotionField:
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise ParameterError(f"{path}: not a motion-field file")
        header = json.loads(fh.readline().decode("ascii"))
        shape = (header["n_frames"], header["grid_h"], header["grid_w"], 2)
        count = int(np.prod(shape))
        vectors = np.frombuffer(fh.read(count * 4), dtype="<f4", count=count)
        if vectors.size != count:
            raise ParameterError(f"{path}: truncated vector payload")
    return MotionField(
        header["width"],
        header["height"],
        header["block_size"],
        vectors.astype(np.float64).reshape(shape),
    )
