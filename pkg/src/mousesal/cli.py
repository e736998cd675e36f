"""Command-line entry point.

Thin wrappers over the library: every command's output is byte-identical
to calling the underlying functions with the same parameters, and every
randomized command takes --seed for reproducible runs.  Machine-readable
output is line-oriented: one header line, then one row per record;
summary lines start with '#'.

Exit codes: 0 success, 1 runtime failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from mousesal import __version__
from mousesal.core.foveation import cursor_for_frame, render_foveated_video
from mousesal.core.metrics import video_similarity
from mousesal.core.raster import bin_traces, rasterize_frames
from mousesal.core.subsample import subsample_curve
from mousesal.core.types import FoveationParams, RasterParams
from mousesal.errors import ConsistencyError, MousesalError, ParameterError
from mousesal.io.framestore import (
    read_manifest,
    read_saliency_store,
    read_video_store,
    write_saliency_store,
    write_video_store,
)
from mousesal.io.motionfile import read_motion_field, write_motion_field
from mousesal.io.tracefile import TraceParseError, read_traces, traces_by_observer
from mousesal.postprocess.fit import GridSpec, fit_postprocess
from mousesal.postprocess.motion import estimate_motion
from mousesal.postprocess.propagate import propagate_fixations
from mousesal.postprocess.transform import PostprocessParams, apply_postprocess

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v)


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


# ----------------------------------------------------------------------
# rasterize


def _select_video_traces(traces, video_id):
    if video_id:
        selected = [t for t in traces if t.video_id == video_id]
    else:
        ids = sorted({t.video_id for t in traces})
        if len(ids) > 1:
            raise ConsistencyError(
                f"trace file covers several videos ({', '.join(ids)}); "
                "the manifest names none, pass --video-id"
            )
        selected = list(traces)
    return selected


def cmd_rasterize(args) -> int:
    meta = read_manifest(args.manifest)
    video_meta = meta.video_meta()
    traces = read_traces(args.traces)
    video_id = args.video_id or meta.video_id
    selected = _select_video_traces(traces, video_id)
    if not selected:
        print("warning: no samples to rasterize; writing all-zero frames", file=sys.stderr)

    params = RasterParams(
        sigma_frac=args.sigma_frac, truncation_radius_sigmas=args.trunc_sigmas
    )
    per_frame = bin_traces(selected, video_meta)
    if args.motion:
        field = read_motion_field(args.motion)
        per_frame = propagate_fixations(per_frame, field, args.window_k, args.decay)
    sm = rasterize_frames(
        per_frame, video_meta, params, video_id=video_id or (selected[0].video_id if selected else "")
    )
    write_saliency_store(args.out, sm)

    n_samples = sum(len(t) for t in selected)
    print("stat value")
    print(f"observers {len({t.observer_id for t in selected})}")
    print(f"samples {n_samples}")
    print(f"frames {video_meta.n_frames}")
    return EXIT_OK


# ----------------------------------------------------------------------
# evaluate


def cmd_evaluate(args) -> int:
    pred = read_saliency_store(args.pred)
    truth = read_saliency_store(args.truth)
    report = video_similarity(pred, truth)
    print("frame sim")
    for idx, score in enumerate(report.frame_scores):
        print(f"{idx} {'skipped' if score is None else _fmt(score)}")
    print(f"# mean {_fmt(report.mean)} valid {report.n_valid} skipped {report.skipped}")
    return EXIT_OK


# ----------------------------------------------------------------------
# curve


def _load_observer_pool(path, prefix):
    # namespacing happens on the pool keys only; trace contents stay untouched
    traces = read_traces(path)
    return {
        f"{prefix}{observer}": obs_traces
        for observer, obs_traces in traces_by_observer(traces).items()
    }


def _curve_videos(manifests, *pools):
    videos = {}
    metas = [read_manifest(m) for m in manifests]
    if len(metas) == 1 and not metas[0].video_id:
        ids = sorted({t.video_id for pool in pools for ts in pool.values() for t in ts})
        if not ids:
            raise ParameterError("no traces found, cannot infer videos")
        return {vid: metas[0].video_meta() for vid in ids}
    for meta in metas:
        if not meta.video_id:
            raise ParameterError(
                "when several manifests are given, each must name its video_id"
            )
        videos[meta.video_id] = meta.video_meta()
    return videos


def cmd_curve(args) -> int:
    # namespace observers by modality so the pools can never collide
    mouse = _load_observer_pool(args.mouse, "m:")
    eye = _load_observer_pool(args.eye, "e:")
    videos = _curve_videos(args.manifest, mouse, eye)
    params = RasterParams(
        sigma_frac=args.sigma_frac, truncation_radius_sigmas=args.trunc_sigmas
    )
    rows = []
    for source, candidates, truth in (("mouse", mouse, eye), ("eye", eye, eye)):
        points = subsample_curve(
            candidates, truth, videos, args.n, args.resamples, args.seed, params
        )
        rows.extend((source, p) for p in points)
    print("source n mean std")
    for source, point in rows:
        print(f"{source} {point.n} {_fmt(point.mean_sim)} {_fmt(point.std_sim)}")
    return EXIT_OK


# ----------------------------------------------------------------------
# postprocess fit / apply


def _params_to_json(params: PostprocessParams, training_sim: float) -> str:
    payload = {
        "gamma": params.gamma,
        "alpha": params.alpha,
        "beta": params.beta,
        "center_sigma_frac": params.center_sigma_frac,
        "window_k": params.window_k,
        "decay": params.decay,
        "training_sim": training_sim,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _params_from_json(path) -> PostprocessParams:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    raw.pop("training_sim", None)
    return PostprocessParams(**raw)


def cmd_fit_postprocess(args) -> int:
    if len(args.inputs) != len(args.truths):
        raise ParameterError(
            f"got {len(args.inputs)} input stores but {len(args.truths)} truth stores"
        )
    inputs = [read_saliency_store(p) for p in args.inputs]
    truths = [read_saliency_store(p) for p in args.truths]
    grid = GridSpec(
        gammas=args.gammas,
        alphas=args.alphas,
        betas=args.betas,
        center_sigma_fracs=args.center_sigma_fracs,
        window_k=args.window_k,
        decay=args.decay,
    )
    params, training_sim = fit_postprocess(inputs, truths, grid, rng_seed=args.seed)
    Path(args.out).write_text(_params_to_json(params, training_sim), encoding="utf-8")
    print("stat value")
    print(f"training_sim {_fmt(training_sim)}")
    print(f"params_file {args.out}")
    return EXIT_OK


def cmd_apply_postprocess(args) -> int:
    params = _params_from_json(args.params)
    sm = read_saliency_store(args.input)
    write_saliency_store(args.out, apply_postprocess(sm, params))
    return EXIT_OK


# ----------------------------------------------------------------------
# foveated rendering


def cmd_render_foveated(args) -> int:
    frames, meta = read_video_store(args.frames)
    traces = read_traces(args.trace)
    selected = _select_video_traces(traces, args.video_id or meta.video_id)
    if len(selected) != 1:
        raise ParameterError(
            f"expected exactly one trace for the video, found {len(selected)}"
        )
    trace = selected[0]
    params = FoveationParams(sigma1_frac=args.sigma1_frac, sigmaw_frac=args.sigmaw_frac)
    rendered = render_foveated_video(frames, trace, meta.fps, params)
    write_video_store(args.out, rendered, meta.fps, video_id=meta.video_id)
    if args.cursor_out:
        lines = ["frame gx gy"]
        for idx in range(meta.n_frames):
            x, y = cursor_for_frame(trace, idx, meta.fps)
            lines.append(f"{idx} {_fmt(x * meta.width)} {_fmt(y * meta.height)}")
        Path(args.cursor_out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


# ----------------------------------------------------------------------
# motion


def cmd_estimate_motion(args) -> int:
    frames, _meta = read_video_store(args.frames)
    field = estimate_motion(frames, block_size=args.block_size, search_radius=args.search_radius)
    write_motion_field(args.out, field)
    gh, gw = field.grid_shape
    print("stat value")
    print(f"frames {field.n_frames}")
    print(f"grid {gw}x{gh}")
    return EXIT_OK


# ----------------------------------------------------------------------
# serve


def cmd_serve(args) -> int:
    from mousesal.service.app import serve
    from mousesal.service.config import load_config

    config = load_config(args.config)
    try:
        return serve(config)
    except OSError as exc:
        print(f"error: cannot start service: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mousesal",
        description="Mouse-tracking saliency toolkit: collection service, "
        "map generation, evaluation, and postprocessing.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_raster_flags(p):
        p.add_argument("--sigma-frac", type=float, default=RasterParams().sigma_frac,
                       help="fixation Gaussian sigma as a fraction of frame width")
        p.add_argument("--trunc-sigmas", type=float,
                       default=RasterParams().truncation_radius_sigmas,
                       help="kernel cut-off radius in sigmas")

    p = sub.add_parser("rasterize", help="turn a trace file into a saliency frame store")
    p.add_argument("--traces", required=True)
    p.add_argument("--manifest", required=True, help="frame store directory with manifest.json")
    p.add_argument("--out", required=True)
    p.add_argument("--video-id", default="", help="video to select when the trace file has several")
    add_raster_flags(p)
    p.add_argument("--motion", default=None, help="motion-field file for temporal propagation")
    p.add_argument("--window-k", type=int, default=2)
    p.add_argument("--decay", type=float, default=0.8)
    p.set_defaults(func=cmd_rasterize)

    p = sub.add_parser("evaluate", help="similarity report of one saliency store against another")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("curve", help="observer-count similarity curves for mouse and eye pools")
    p.add_argument("--mouse", required=True, help="mouse trace file")
    p.add_argument("--eye", required=True, help="eye-tracking trace file (ground truth)")
    p.add_argument("--manifest", action="append", required=True,
                   help="frame store directory; repeat for multiple videos")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated observer counts")
    p.add_argument("--resamples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    add_raster_flags(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("fit-postprocess", help="grid-search postprocess parameters on training pairs")
    p.add_argument("--inputs", nargs="+", required=True, help="input saliency stores")
    p.add_argument("--truths", nargs="+", required=True, help="ground-truth saliency stores")
    p.add_argument("--out", required=True, help="where to write the fitted params file")
    defaults = GridSpec()
    p.add_argument("--gammas", type=_float_list, default=defaults.gammas)
    p.add_argument("--alphas", type=_float_list, default=defaults.alphas)
    p.add_argument("--betas", type=_float_list, default=defaults.betas)
    p.add_argument("--center-sigma-fracs", type=_float_list, default=defaults.center_sigma_fracs)
    p.add_argument("--window-k", type=int, default=defaults.window_k)
    p.add_argument("--decay", type=float, default=defaults.decay)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fit_postprocess)

    p = sub.add_parser("apply-postprocess", help="apply a fitted params file to a saliency store")
    p.add_argument("--params", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_apply_postprocess)

    p = sub.add_parser("render-foveated", help="offline reference render of the player's display")
    p.add_argument("--frames", required=True, help="video frame store")
    p.add_argument("--trace", required=True, help="trace file with exactly one matching trace")
    p.add_argument("--out", required=True)
    p.add_argument("--video-id", default="")
    foveation = FoveationParams()
    p.add_argument("--sigma1-frac", type=float, default=foveation.sigma1_frac)
    p.add_argument("--sigmaw-frac", type=float, default=foveation.sigmaw_frac)
    p.add_argument("--cursor-out", default=None,
                   help="also write per-frame cursor pixel coordinates to this file")
    p.set_defaults(func=cmd_render_foveated)

    p = sub.add_parser("estimate-motion", help="block-matching motion field of a frame store")
    p.add_argument("--frames", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--block-size", type=int, default=16)
    p.add_argument("--search-radius", type=int, default=8)
    p.set_defaults(func=cmd_estimate_motion)

    p = sub.add_parser("serve", help="run the trace collection service")
    p.add_argument("--config", default=None, help="JSON config file (env vars override)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TraceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MousesalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
