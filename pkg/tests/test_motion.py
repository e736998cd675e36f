import numpy as np
import pytest

from mousesal.postprocess.motion import MotionField, estimate_motion
from mousesal.errors import ParameterError


def test_static_video_gives_zero_field():
    rng = np.random.default_rng(30)
    frame = rng.random((48, 64))
    field = estimate_motion([frame, frame, frame], block_size=16, search_radius=4)
    assert not field.vectors.any()


def test_zero_search_radius_gives_zero_field():
    rng = np.random.default_rng(31)
    frames = [rng.random((32, 32)), rng.random((32, 32))]
    field = estimate_motion(frames, block_size=16, search_radius=0)
    assert not field.vectors.any()


def test_pure_translation_recovered_on_interior_blocks():
    rng = np.random.default_rng(32)
    prev = rng.random((96, 128))
    cur = np.empty_like(prev)
    cur[:, 3:] = prev[:, :-3]  # shift right by 3 px
    cur[:, :3] = prev[:, :1]
    field = estimate_motion([prev, cur], block_size=16, search_radius=8)
    gh, gw = field.grid_shape
    interior = field.vectors[1, 1 : gh - 1, 1 : gw - 1]
    assert np.all(interior[:, :, 0] == 3.0)
    assert np.all(interior[:, :, 1] == 0.0)


def test_vertical_translation_sign():
    rng = np.random.default_rng(33)
    prev = rng.random((96, 96))
    cur = np.empty_like(prev)
    cur[2:, :] = prev[:-2, :]  # shift down by 2 px
    cur[:2, :] = prev[:1, :]
    field = estimate_motion([prev, cur], block_size=16, search_radius=8)
    gh, gw = field.grid_shape
    interior = field.vectors[1, 1 : gh - 1, 1 : gw - 1]
    assert np.all(interior[:, :, 0] == 0.0)
    assert np.all(interior[:, :, 1] == 2.0)


def test_first_frame_has_zero_vectors():
    rng = np.random.default_rng(34)
    frames = [rng.random((32, 32)), rng.random((32, 32))]
    field = estimate_motion(frames, block_size=8, search_radius=2)
    assert not field.vectors[0].any()


def test_single_frame_rejected():
    with pytest.raises(ParameterError):
        estimate_motion([np.zeros((16, 16))], block_size=16, search_radius=4)


def test_small_block_rejected():
    frames = [np.zeros((16, 16)), np.zeros((16, 16))]
    with pytest.raises(ParameterError):
        estimate_motion(frames, block_size=2, search_radius=4)


def test_ragged_edge_blocks_supported():
    rng = np.random.default_rng(35)
    frames = [rng.random((20, 30)), rng.random((20, 30))]
    field = estimate_motion(frames, block_size=16, search_radius=2)
    assert field.grid_shape == (2, 2)


def test_zero_field_constructor_shape():
    field = MotionField.zero(30, 20, 16, 5)
    assert field.vectors.shape == (5, 2, 2, 2)
    assert field.vector_at(0, 29.0, 19.0) == (0.0, 0.0)
