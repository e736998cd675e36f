import numpy as np
import pytest

from mousesal.core.types import WeightedFixations
from mousesal.postprocess.motion import MotionField
from mousesal.postprocess.propagate import propagate_fixations
from mousesal.errors import ParameterError


def _frames(*point_lists):
    return [
        WeightedFixations(np.array(points, dtype=np.float64).reshape(-1, 2))
        for points in point_lists
    ]


def test_window_zero_is_identity():
    per_frame = _frames([(0.2, 0.3)], [], [(0.7, 0.7)])
    motion = MotionField.zero(32, 18, 16, 3)
    out = propagate_fixations(per_frame, motion, window_k=0, decay=0.5)
    assert [len(wf) for wf in out] == [1, 0, 1]
    np.testing.assert_array_equal(out[0].xy, per_frame[0].xy)


def test_static_video_spreads_fixation_with_decayed_weight():
    per_frame = _frames([], [(0.4, 0.6)], [])
    motion = MotionField.zero(32, 18, 16, 3)
    out = propagate_fixations(per_frame, motion, window_k=1, decay=0.5)
    for t in (0, 2):
        assert len(out[t]) == 1
        np.testing.assert_allclose(out[t].xy, [[0.4, 0.6]], atol=1e-12)
        np.testing.assert_allclose(out[t].weights, [0.5], atol=1e-12)
    assert len(out[1]) == 1
    np.testing.assert_allclose(out[1].weights, [1.0])


def test_decay_one_static_pools_whole_window():
    per_frame = _frames([(0.1, 0.1)], [(0.2, 0.2)], [(0.3, 0.3)], [(0.4, 0.4)], [(0.5, 0.5)])
    motion = MotionField.zero(20, 20, 4, 5)
    out = propagate_fixations(per_frame, motion, window_k=1, decay=1.0)
    # interior frames see their own fixation plus both neighbors at weight 1
    for t in (1, 2, 3):
        assert out[t].total_weight() == pytest.approx(3.0)
    assert out[0].total_weight() == pytest.approx(2.0)
    assert out[4].total_weight() == pytest.approx(2.0)


def test_total_weight_per_fixation_follows_decay_series():
    per_frame = _frames([], [], [(0.5, 0.5)], [], [])
    motion = MotionField.zero(40, 40, 8, 5)
    decay = 0.8
    out = propagate_fixations(per_frame, motion, window_k=2, decay=decay)
    pooled = sum(wf.total_weight() for wf in out)
    expected = 1.0 + 2 * decay + 2 * decay**2
    assert pooled == pytest.approx(expected, abs=1e-12)


def test_motion_displaces_propagated_fixations():
    # uniform +4 px x-motion on every frame transition; 40 px wide frame
    vectors = np.zeros((3, 1, 1, 2))
    vectors[:, :, :, 0] = 4.0
    motion = MotionField(40, 40, 40, vectors)
    per_frame = _frames([], [(0.5, 0.5)], [])
    out = propagate_fixations(per_frame, motion, window_k=1, decay=1.0)
    np.testing.assert_allclose(out[2].xy, [[0.6, 0.5]], atol=1e-12)  # +4 px forward
    np.testing.assert_allclose(out[0].xy, [[0.4, 0.5]], atol=1e-12)  # -4 px backward


def test_propagated_positions_clamp_to_unit_square():
    vectors = np.zeros((2, 1, 1, 2))
    vectors[:, :, :, 0] = 30.0
    motion = MotionField(40, 40, 40, vectors)
    per_frame = _frames([(0.9, 0.5)], [])
    out = propagate_fixations(per_frame, motion, window_k=1, decay=1.0)
    assert out[1].xy[0, 0] == 1.0


def test_window_exceeding_video_is_clipped():
    per_frame = _frames([(0.5, 0.5)], [])
    motion = MotionField.zero(16, 16, 16, 2)
    out = propagate_fixations(per_frame, motion, window_k=10, decay=0.9)
    assert len(out[1]) == 1  # only one frame on that side exists


def test_motion_field_must_cover_frames():
    per_frame = _frames([(0.5, 0.5)], [], [])
    motion = MotionField.zero(16, 16, 16, 2)
    with pytest.raises(ParameterError):
        propagate_fixations(per_frame, motion, window_k=1, decay=0.9)
