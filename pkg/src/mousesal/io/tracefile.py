"""Plain-text trace files: one fixation sample per line.

Line format (space-separated):

    video_id observer_id source t_ms x y

Coordinates are printed with 6 decimal digits; lines starting with '#'
and blank lines are ignored.  Parsing a file written by format_traces
and re-serializing it reproduces the bytes exactly, so the format
round-trips at 1e-6 coordinate granularity.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

from mousesal.core.types import FixationSample, FixationTrace
from mousesal.errors import MousesalError, ParameterError


class TraceParseError(MousesalError, ValueError):
    """A malformed trace line; carries the 1-based line number."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


def _check_field(value: str, name: str) -> str:
    if not value or any(c.isspace() for c in value):
        raise ParameterError(f"{name} must be non-empty and contain no whitespace: {value!r}")
    return value


def format_sample(s: FixationSample) -> str:
    _check_field(s.video_id, "video_id")
    _check_field(s.observer_id, "observer_id")
    return f"{s.video_id} {s.observer_id} {s.source} {s.t_ms} {s.x:.6f} {s.y:.6f}"


def format_traces(traces: Iterable[FixationTrace], header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for trace in traces:
        for s in trace.samples:
            lines.append(format_sample(s))
    return "\n".join(lines) + "\n" if lines else ""


def write_traces(path: str | os.PathLike, traces: Iterable[FixationTrace], header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_traces(traces, header))


def parse_traces(text: str) -> list[FixationTrace]:
    """Parse trace text into traces grouped by (video, observer, source).

    Samples within a group are ordered by timestamp (stable for ties);
    groups come out in first-appearance order.
    """
    groups: dict[tuple[str, str, str], list[FixationSample]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 6:
            raise TraceParseError(line_no, f"expected 6 fields, got {len(parts)}")
        video_id, observer_id, source, t_raw, x_raw, y_raw = parts
        try:
            t_ms = int(t_raw)
            x = float(x_raw)
            y = float(y_raw)
        except ValueError as exc:
            raise TraceParseError(line_no, f"bad numeric field: {exc}") from None
        try:
            sample = FixationSample(observer_id, video_id, t_ms, x, y, source)
        except ParameterError as exc:
            raise TraceParseError(line_no, str(exc)) from None
        groups.setdefault((video_id, observer_id, source), []).append(sample)
    return [FixationTrace.from_samples(samples) for samples in groups.values()]


def read_traces(path: str | os.PathLike) -> list[FixationTrace]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_traces(fh.read())


def traces_by_observer(traces: Sequence[FixationTrace]) -> dict[str, list[FixationTrace]]:
    out: dict[str, list[FixationTrace]] = {}
    for t in traces:
        out.setdefault(t.observer_id, []).append(t)
    return out
