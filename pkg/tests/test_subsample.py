import numpy as np
import pytest

from mousesal.core.subsample import subsample_curve
from mousesal.core.types import VideoMeta
from mousesal.errors import ParameterError

from helpers import synth_observers

META = VideoMeta(64, 36, 25.0, 6)


def _pools(seed=100, n_eye=6, n_mouse=5):
    rng = np.random.default_rng(seed)
    eye = synth_observers(n_eye, META, rng, source="eye", prefix="eye")
    mouse = synth_observers(n_mouse, META, rng, source="mouse", jitter=0.09, prefix="mou")
    return eye, mouse


def test_self_holdout_full_pool_is_rejected():
    eye, _ = _pools()
    with pytest.raises(ParameterError):
        subsample_curve(eye, eye, {"vid": META}, [len(eye)], 2, rng_seed=1)


def test_partial_observer_overlap_is_rejected():
    eye, mouse = _pools()
    mixed = dict(mouse)
    mixed[next(iter(eye))] = eye[next(iter(eye))]
    with pytest.raises(ParameterError):
        subsample_curve(mixed, eye, {"vid": META}, [1], 2, rng_seed=1)


def test_n_beyond_pool_is_rejected():
    eye, mouse = _pools()
    with pytest.raises(ParameterError):
        subsample_curve(mouse, eye, {"vid": META}, [len(mouse) + 1], 2, rng_seed=1)


def test_full_disjoint_pool_has_zero_std():
    eye, mouse = _pools()
    points = subsample_curve(mouse, eye, {"vid": META}, [len(mouse)], 5, rng_seed=3)
    assert points[0].n == len(mouse)
    assert points[0].std_sim == 0.0


def test_reproducible_given_seed():
    eye, mouse = _pools()
    a = subsample_curve(mouse, eye, {"vid": META}, [1, 2], 4, rng_seed=42)
    b = subsample_curve(mouse, eye, {"vid": META}, [1, 2], 4, rng_seed=42)
    assert a == b
    c = subsample_curve(mouse, eye, {"vid": META}, [1, 2], 4, rng_seed=43)
    assert a != c


def test_mean_sim_grows_with_observers():
    rng = np.random.default_rng(200)
    eye = synth_observers(16, META, rng, source="eye", prefix="eye")
    points = subsample_curve(eye, eye, {"vid": META}, [1, 2, 4, 8], 20, rng_seed=7)
    means = [p.mean_sim for p in points]
    assert means == sorted(means)
    assert all(0.0 <= m <= 1.0 for m in means)
