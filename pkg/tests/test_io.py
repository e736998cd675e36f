import numpy as np
import pytest

from mousesal.core.types import FixationSample, FixationTrace, SaliencyVideo
from mousesal.errors import ParameterError
from mousesal.io.framestore import (
    read_manifest,
    read_saliency_store,
    read_video_store,
    write_saliency_store,
    write_video_store,
)
from mousesal.io.motionfile import read_motion_field, write_motion_field
from mousesal.io.tracefile import TraceParseError, format_traces, parse_traces, read_traces, write_traces
from mousesal.postprocess.motion import MotionField


def _trace(observer="obs1", video="vidA", source="mouse", n=5):
    samples = [
        FixationSample(observer, video, 40 * i, 0.1 + 0.123456 * i / n, 0.9 - 0.2 * i / n, source)
        for i in range(n)
    ]
    return FixationTrace.from_samples(samples)


def test_trace_text_round_trip_is_exact(tmp_path):
    traces = [_trace(), _trace(observer="obs2", source="eye")]
    text = format_traces(traces)
    parsed = parse_traces(text)
    assert format_traces(parsed) == text


def test_trace_file_round_trip(tmp_path):
    path = tmp_path / "t.traces"
    traces = [_trace()]
    write_traces(path, traces, header="collected by unit test")
    back = read_traces(path)
    assert len(back) == 1
    assert back[0].observer_id == "obs1"
    assert [s.t_ms for s in back[0].samples] == [0, 40, 80, 120, 160]


def test_comments_and_blank_lines_ignored():
    text = "# comment\n\nvidA obs1 mouse 0 0.500000 0.500000\n"
    traces = parse_traces(text)
    assert len(traces) == 1


def test_malformed_line_reports_line_number():
    text = "vidA obs1 mouse 0 0.5 0.5\nvidA obs1 mouse nonsense 0.5 0.5\n"
    with pytest.raises(TraceParseError) as excinfo:
        parse_traces(text)
    assert excinfo.value.line_no == 2


def test_out_of_range_coordinate_reports_line_number():
    with pytest.raises(TraceParseError) as excinfo:
        parse_traces("vidA obs1 mouse 0 1.500000 0.500000\n")
    assert excinfo.value.line_no == 1


def test_wrong_field_count_rejected():
    with pytest.raises(TraceParseError):
        parse_traces("vidA obs1 mouse 0 0.5\n")


def test_video_store_round_trip(tmp_path):
    rng = np.random.default_rng(60)
    frames = [rng.random((9, 16)) for _ in range(4)]
    write_video_store(tmp_path / "store", frames, fps=25.0, video_id="クリップ")
    back, meta = read_video_store(tmp_path / "store")
    assert meta.n_frames == 4 and meta.width == 16 and meta.height == 9
    assert meta.video_id == "クリップ"
    for a, b in zip(frames, back):
        assert np.abs(a - b).max() <= 0.5 / 255 + 1e-12


def test_color_video_store_round_trip(tmp_path):
    rng = np.random.default_rng(61)
    frames = [rng.random((6, 8, 3)) for _ in range(2)]
    write_video_store(tmp_path / "store", frames, fps=30.0)
    back, meta = read_video_store(tmp_path / "store")
    assert meta.channels == 3
    assert np.abs(frames[1] - back[1]).max() <= 0.5 / 255 + 1e-12


def test_saliency_store_quantization_bound(tmp_path):
    rng = np.random.default_rng(62)
    frames = rng.random((5, 9, 16)) * 3.7
    sm = SaliencyVideo("v", frames, 25.0)
    write_saliency_store(tmp_path / "sal", sm)
    back = read_saliency_store(tmp_path / "sal")
    true_max = frames.max()
    assert np.abs(back.frames - frames).max() <= true_max * 2.0**-15
    assert back.fps == 25.0
    assert back.video_id == "v"


def test_all_zero_saliency_store(tmp_path):
    sm = SaliencyVideo("z", np.zeros((2, 4, 4)), 25.0)
    write_saliency_store(tmp_path / "sal", sm)
    back = read_saliency_store(tmp_path / "sal")
    assert not back.frames.any()


def test_manifest_detects_missing_frames(tmp_path):
    rng = np.random.default_rng(63)
    write_video_store(tmp_path / "store", [rng.random((4, 4))] * 3, fps=25.0)
    (tmp_path / "store" / "frame_000001.pgm").unlink()
    with pytest.raises(ParameterError):
        read_manifest(tmp_path / "store")


def test_kind_mismatch_rejected(tmp_path):
    rng = np.random.default_rng(64)
    write_video_store(tmp_path / "store", [rng.random((4, 4))], fps=25.0)
    with pytest.raises(ParameterError):
        read_saliency_store(tmp_path / "store")


def test_motion_field_round_trip(tmp_path):
    rng = np.random.default_rng(65)
    vectors = rng.integers(-8, 9, size=(4, 3, 5, 2)).astype(np.float64)
    field = MotionField(72, 36, 16, vectors)
    write_motion_field(tmp_path / "m.msmf", field)
    back = read_motion_field(tmp_path / "m.msmf")
    assert back.width == 72 and back.height == 36 and back.block_size == 16
    np.testing.assert_array_equal(back.vectors, vectors)


def test_motion_file_magic_checked(tmp_path):
    (tmp_path / "bad.msmf").write_bytes(b"NOTAMAGIC\n{}")
    with pytest.raises(ParameterError):
        read_motion_field(tmp_path / "bad.msmf")
