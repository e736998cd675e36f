import numpy as np
import pytest

from mousesal.core.metrics import video_similarity
from mousesal.core.raster import rasterize_video
from mousesal.core.types import SaliencyVideo, VideoMeta
from mousesal.errors import ParameterError
from mousesal.postprocess.fit import GridSpec, fit_postprocess
from mousesal.postprocess.transform import PostprocessParams, apply_postprocess, center_prior

from helpers import synth_observers


def _vid(frames, video_id="v"):
    return SaliencyVideo(video_id, np.asarray(frames, dtype=np.float64), 25.0)


def test_identity_params_preserve_similarity():
    rng = np.random.default_rng(40)
    sm = _vid(rng.random((3, 9, 16)))
    out = apply_postprocess(sm, PostprocessParams(gamma=1.0, alpha=1.0, beta=0.0))
    assert video_similarity(out, sm).mean == pytest.approx(1.0, abs=1e-12)


def test_beta_only_yields_center_prior():
    rng = np.random.default_rng(41)
    sm = _vid(rng.random((2, 10, 20)))
    out = apply_postprocess(sm, PostprocessParams(gamma=1.0, alpha=0.0, beta=1.0))
    prior = center_prior(20, 10, 0.25)
    for frame in out.frames:
        np.testing.assert_allclose(frame, prior, atol=1e-12)


def test_gamma_hand_example():
    sm = _vid(np.array([[[0.5, 1.0]]]))
    out = apply_postprocess(sm, PostprocessParams(gamma=2.0, alpha=1.0, beta=0.0))
    np.testing.assert_allclose(out.frames[0], [[0.25, 1.0]], atol=1e-12)


def test_zero_frames_stay_zero_under_alpha_only():
    sm = _vid(np.zeros((2, 4, 4)))
    out = apply_postprocess(sm, PostprocessParams(gamma=0.5, alpha=1.0, beta=0.0))
    assert not out.frames.any()


def test_output_bounded_by_alpha_plus_beta():
    rng = np.random.default_rng(42)
    sm = _vid(rng.random((3, 8, 8)) * 100)
    params = PostprocessParams(gamma=0.5, alpha=0.75, beta=0.5)
    out = apply_postprocess(sm, params)
    assert out.frames.min() >= 0.0
    assert out.frames.max() <= params.alpha + params.beta + 1e-12


def test_center_prior_peak_and_symmetry():
    prior = center_prior(21, 11, 0.2)
    assert prior[5, 10] == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(prior, prior[:, ::-1], atol=1e-12)
    np.testing.assert_allclose(prior, prior[::-1, :], atol=1e-12)


def test_invalid_params_rejected():
    with pytest.raises(ParameterError):
        PostprocessParams(alpha=0.0, beta=0.0)
    with pytest.raises(ParameterError):
        PostprocessParams(gamma=0.0)
    with pytest.raises(ParameterError):
        PostprocessParams(decay=0.0)


def _training_maps(seed=50, n_videos=2):
    rng = np.random.default_rng(seed)
    meta = VideoMeta(48, 27, 25.0, 5)
    inputs = []
    for v in range(n_videos):
        observers = synth_observers(3, meta, rng, video_id=f"v{v}", prefix=f"v{v}o")
        traces = [t for ts in observers.values() for t in ts]
        inputs.append(rasterize_video(traces, meta))
    return inputs


def test_fit_on_identical_pairs_reaches_one():
    inputs = _training_maps()
    params, score = fit_postprocess(inputs, inputs)
    assert score == pytest.approx(1.0, abs=1e-9)
    # similarity ignores scale, so any pure-gamma=1 point ties; beta must be 0
    assert params.gamma == 1.0
    assert params.beta == 0.0
    assert params.alpha > 0.0


def test_fit_recovers_forward_model():
    inputs = _training_maps(seed=51)
    target = PostprocessParams(gamma=1.5, alpha=0.5, beta=0.25, center_sigma_frac=0.35)
    truths = [apply_postprocess(sm, target) for sm in inputs]
    params, score = fit_postprocess(inputs, truths)
    assert score >= 0.999
    assert params.gamma == target.gamma
    assert params.center_sigma_frac == target.center_sigma_frac
    # alpha/beta may differ by a common scale factor (similarity ignores scale)
    assert params.beta / (params.alpha + params.beta) == pytest.approx(
        target.beta / (target.alpha + target.beta), abs=1e-9
    )


def test_fit_never_underperforms_identity():
    rng = np.random.default_rng(52)
    inputs = _training_maps(seed=52)
    truths = [_vid(rng.random(sm.frames.shape)) for sm in inputs]
    params, score = fit_postprocess(inputs, truths)
    identity = PostprocessParams(gamma=1.0, alpha=1.0, beta=0.0)
    identity_score = float(
        np.mean([video_similarity(apply_postprocess(i, identity), t).mean for i, t in zip(inputs, truths)])
    )
    assert score >= identity_score - 1e-12


def test_fit_rejects_empty_and_misaligned_training_sets():
    with pytest.raises(ParameterError):
        fit_postprocess([], [])
    inputs = _training_maps(seed=53, n_videos=1)
    with pytest.raises(ParameterError):
        fit_postprocess(inputs, [])
    bad_truth = [_vid(np.ones((2, 5, 5)))]
    with pytest.raises(ParameterError):
        fit_postprocess(inputs, bad_truth)


def test_grid_combinations_skip_all_zero_blend():
    combos = list(GridSpec().combinations())
    assert all(p.alpha + p.beta > 0 for p in combos)
    assert len(combos) == 5 * (5 * 5 - 1) * 3


def test_fitted_transform_improves_single_observer_maps_on_held_out_data():
    """Maps from one noisy observer get visibly closer to the many-observer
    ground truth after the fitted transform; the gain is measured on videos
    the fit never saw."""
    meta = VideoMeta(64, 36, 25.0, 10)
    rng = np.random.default_rng(77)

    def pair(video_id):
        eye = synth_observers(16, meta, rng, video_id=video_id, source="eye",
                              jitter=0.05, prefix=f"{video_id}e")
        mouse = synth_observers(1, meta, rng, video_id=video_id, source="mouse",
                                jitter=0.09, prefix=f"{video_id}m")
        truth = rasterize_video([t for ts in eye.values() for t in ts], meta)
        noisy = rasterize_video([t for ts in mouse.values() for t in ts], meta)
        return noisy, truth

    train = [pair(f"train{v}") for v in range(3)]
    held_out = [pair(f"test{v}") for v in range(2)]
    params, _ = fit_postprocess([i for i, _ in train], [t for _, t in train])

    raw = np.mean([video_similarity(i, t).mean for i, t in held_out])
    post = np.mean(
        [video_similarity(apply_postprocess(i, params), t).mean for i, t in held_out]
    )
    assert post > raw
