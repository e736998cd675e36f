"""Session and trace storage: an append-only event log plus a compacting snapshot.

All state changes append one JSON line to events.log (flushed and
fsynced before acknowledging), so the store survives crashes and the raw
log stays diffable.  compact() folds the log into snapshot.json; opening
a data directory loads the snapshot and replays any remaining log lines.

Writes are serialized through one lock, which also makes playlist
allocation read-modify-write atomic: concurrent session creations can
never allocate from stale view counts.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import logging
import os
import threading
import urllib.request
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from mousesal.core.types import FixationSample, FixationTrace
from mousesal.errors import MousesalError, ParameterError
from mousesal.service.models import (
    SESSION_ACTIVE,
    SESSION_COMPLETED,
    SESSION_EXCLUDED,
    SessionRecord,
    TraceUpload,
    VideoCatalogEntry,
)

log = logging.getLogger(__name__)

LOG_NAME = "events.log"
SNAPSHOT_NAME = "snapshot.json"
COORD_DECIMALS = 6  # trace files print 6 decimals; quantize on ingest so round-trips are exact

DEFAULT_PLAYLIST_SIZE = 10
DEFAULT_MIN_SCREEN_WIDTH = 1024
DEFAULT_MIN_FPS = 20.0


class NotFoundError(MousesalError, KeyError):
    """Unknown session or video id."""


class ValidationError(MousesalError, ValueError):
    """An upload or request body fails validation; nothing is stored."""


class PreconditionError(MousesalError, ValueError):
    """The session is not in the right state for this operation."""


class ServiceStateError(MousesalError, RuntimeError):
    """The service itself is not in a usable state (e.g. empty catalog)."""


@dataclass
class StoredTrace:
    session_id: str
    video_id: str
    samples: list[tuple[int, float, float]]
    client_fps_report: float
    rewatched: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "video_id": self.video_id,
            "samples": [[t, x, y] for (t, x, y) in self.samples],
            "client_fps_report": self.client_fps_report,
            "rewatched": self.rewatched,
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "StoredTrace":
        return cls(
            session_id=raw["session_id"],
            video_id=raw["video_id"],
            samples=[(int(t), float(x), float(y)) for t, x, y in raw["samples"]],
            client_fps_report=float(raw.get("client_fps_report", 0.0)),
            rewatched=bool(raw.get("rewatched", False)),
        )


def allocate_playlist(
    catalog: Sequence[VideoCatalogEntry],
    playlist_size: int,
    rng: np.random.Generator,
) -> list[str]:
    """Pick the least-viewed videos (random among ties) in randomized order.

    Pure selection: the caller increments view counts together with
    whatever state change the allocation belongs to.
    """
    if playlist_size < 1:
        raise ParameterError(f"playlist_size must be >= 1, got {playlist_size}")
    if playlist_size > len(catalog):
        raise ParameterError(
            f"playlist_size {playlist_size} exceeds catalog size {len(catalog)}"
        )
    keys = rng.random(len(catalog))
    order = sorted(range(len(catalog)), key=lambda i: (catalog[i].view_count, keys[i]))
    chosen = [catalog[i].video_id for i in order[:playlist_size]]
    rng.shuffle(chosen)
    return chosen


@dataclass
class ExportedDataset:
    """Per-video trace files plus a manifest describing coverage."""

    files: dict[str, str]  # "<video_id>.traces" -> trace-format text
    manifest: dict[str, Any]


class CollectionStore:
    def __init__(
        self,
        data_dir: str | os.PathLike,
        catalog: Sequence[VideoCatalogEntry],
        *,
        secret: str = "change-me",
        playlist_size: int = DEFAULT_PLAYLIST_SIZE,
        min_screen_width: int = DEFAULT_MIN_SCREEN_WIDTH,
        min_fps: float = DEFAULT_MIN_FPS,
        webhook_url: str | None = None,
        rng_seed: int | None = None,
    ):
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._secret = secret
        self._playlist_size = playlist_size
        self._min_screen_width = min_screen_width
        self._min_fps = min_fps
        self._webhook_url = webhook_url
        self._rng = np.random.default_rng(rng_seed)
        self._lock = threading.RLock()

        self._catalog: dict[str, VideoCatalogEntry] = {e.video_id: e for e in catalog}
        self._sessions: dict[str, SessionRecord] = {}
        self._traces: dict[tuple[str, str], StoredTrace] = {}

        self._load_persisted()
        self._log_file = open(self._dir / LOG_NAME, "a", encoding="utf-8")

    # ------------------------------------------------------------------
    # persistence

    def _load_persisted(self) -> None:
        snapshot = self._dir / SNAPSHOT_NAME
        if snapshot.is_file():
            state = json.loads(snapshot.read_text(encoding="utf-8"))
            for raw in state.get("catalog", []):
                entry = VideoCatalogEntry.from_dict(raw)
                if entry.video_id in self._catalog:
                    self._catalog[entry.video_id].view_count = entry.view_count
            for raw in state.get("sessions", []):
                record = SessionRecord.from_dict(raw)
                self._sessions[record.session_id] = record
            for raw in state.get("traces", []):
                trace = StoredTrace.from_dict(raw)
                self._traces[(trace.session_id, trace.video_id)] = trace
        log_path = self._dir / LOG_NAME
        if log_path.is_file():
            with open(log_path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        self._replay(json.loads(line))

    def _replay(self, event: dict[str, Any]) -> None:
        kind = event["event"]
        if kind == "session":
            record = SessionRecord.from_dict(event["record"])
            self._sessions[record.session_id] = record
            for video_id in record.playlist:
                if video_id in self._catalog:
                    self._catalog[video_id].view_count += 1
        elif kind == "trace":
            trace = StoredTrace.from_dict(event)
            self._traces[(trace.session_id, trace.video_id)] = trace
            session = self._sessions.get(trace.session_id)
            if session is not None:
                session.completed_videos.add(trace.video_id)
        elif kind == "complete":
            session = self._sessions.get(event["session_id"])
            if session is not None:
                session.status = SESSION_COMPLETED
                session.completion_code = event["completion_code"]
        else:
            log.warning("skipping unknown event type %r in log", kind)

    def _append(self, event: dict[str, Any]) -> None:
        self._log_file.write(json.dumps(event, sort_keys=True) + "\n")
        self._log_file.flush()
        os.fsync(self._log_file.fileno())

    def compact(self) -> None:
        """Fold the event log into the snapshot and truncate it."""
        with self._lock:
            state = {
                "catalog": [e.to_dict() for e in self._catalog.values()],
                "sessions": [s.to_dict() for s in self._sessions.values()],
                "traces": [t.to_dict() for t in self._traces.values()],
            }
            tmp = self._dir / (SNAPSHOT_NAME + ".tmp")
            tmp.write_text(json.dumps(state, sort_keys=True), encoding="utf-8")
            tmp.replace(self._dir / SNAPSHOT_NAME)
            self._log_file.truncate(0)
            self._log_file.seek(0)

    def close(self) -> None:
        with self._lock:
            self.compact()
            self._log_file.close()

    # ------------------------------------------------------------------
    # catalog and sessions

    @property
    def catalog(self) -> list[VideoCatalogEntry]:
        with self._lock:
            return list(self._catalog.values())

    def video(self, video_id: str) -> VideoCatalogEntry:
        with self._lock:
            entry = self._catalog.get(video_id)
            if entry is None:
                raise NotFoundError(f"unknown video {video_id!r}")
            return entry

    def session(self, session_id: str) -> SessionRecord:
        with self._lock:
            record = self._sessions.get(session_id)
            if record is None:
                raise NotFoundError(f"unknown session {session_id!r}")
            return record

    def create_session(
        self,
        screen_width: int,
        screen_height: int,
        measured_fps: float,
        playlist_size: int | None = None,
    ) -> SessionRecord:
        """Admit or exclude a participant based on the capability report.

        Participants failing the screen-width or frame-rate check get an
        excluded session with an empty playlist; their uploads are
        rejected later, so no excluded data can enter the dataset.
        """
        size = self._playlist_size if playlist_size is None else playlist_size
        if size < 1:
            raise ParameterError(f"playlist_size must be >= 1, got {size}")
        with self._lock:
            if not self._catalog:
                raise ServiceStateError("video catalog is empty")
            record = SessionRecord(
                session_id=uuid.uuid4().hex,
                created_at=datetime.now(timezone.utc).isoformat(),
                screen_width=int(screen_width),
                screen_height=int(screen_height),
                measured_fps=float(measured_fps),
            )
            passes = screen_width >= self._min_screen_width and measured_fps >= self._min_fps
            if not passes:
                record.status = SESSION_EXCLUDED
            else:
                entries = list(self._catalog.values())
                record.playlist = allocate_playlist(entries, size, self._rng)
                for video_id in record.playlist:
                    self._catalog[video_id].view_count += 1
            self._sessions[record.session_id] = record
            self._append({"event": "session", "record": record.to_dict()})
            return record

    # ------------------------------------------------------------------
    # traces

    def _validate_upload(self, upload: TraceUpload) -> SessionRecord:
        session = self.session(upload.session_id)
        if session.status == SESSION_EXCLUDED:
            raise PreconditionError(
                f"session {upload.session_id} failed the capability checks; uploads are not accepted"
            )
        if session.status != SESSION_ACTIVE:
            raise PreconditionError(f"session {upload.session_id} is {session.status}, not active")
        if upload.video_id not in session.playlist:
            raise ValidationError(
                f"video {upload.video_id!r} is not in this session's playlist"
            )
        if not upload.samples:
            raise ValidationError("upload contains no samples")
        duration_ms = self.video(upload.video_id).duration_ms
        prev_t = -1
        for i, (t, x, y) in enumerate(upload.samples):
            if t < 0 or t > duration_ms:
                raise ValidationError(
                    f"sample {i}: t_ms {t} outside [0, {duration_ms}]"
                )
            if t < prev_t:
                raise ValidationError(f"sample {i}: t_ms {t} goes backwards")
            if not (0.0 <= x <= 1.0) or not (0.0 <= y <= 1.0):
                raise ValidationError(
                    f"sample {i}: coordinates ({x}, {y}) outside the unit square"
                )
            prev_t = t
        return session

    def ingest_trace(self, upload: TraceUpload) -> dict[str, Any]:
        """Validate and persist one video's trace; repeat uploads overwrite.

        Validation happens before anything is written, so a failed upload
        leaves storage byte-identical.
        """
        with self._lock:
            session = self._validate_upload(upload)
            key = (upload.session_id, upload.video_id)
            stored = StoredTrace(
                session_id=upload.session_id,
                video_id=upload.video_id,
                samples=[
                    (t, round(x, COORD_DECIMALS), round(y, COORD_DECIMALS))
                    for (t, x, y) in upload.samples
                ],
                client_fps_report=upload.client_fps_report,
                rewatched=key in self._traces,
            )
            self._traces[key] = stored
            session.completed_videos.add(upload.video_id)
            self._append({"event": "trace", **stored.to_dict()})
            return {"accepted": True, "samples_stored": len(stored.samples)}

    def complete_session(self, session_id: str) -> dict[str, str]:
        """Issue the crowdsourcing completion code once all videos are uploaded."""
        with self._lock:
            session = self.session(session_id)
            if session.status == SESSION_COMPLETED and session.completion_code:
                return {"completion_code": session.completion_code}  # idempotent
            if session.status != SESSION_ACTIVE:
                raise PreconditionError(f"session {session_id} is {session.status}")
            missing = [v for v in session.playlist if v not in session.completed_videos]
            if missing:
                raise PreconditionError(
                    f"playlist incomplete; missing videos: {', '.join(missing)}"
                )
            code = self._completion_code(session_id)
            session.status = SESSION_COMPLETED
            session.completion_code = code
            self._append({"event": "complete", "session_id": session_id, "completion_code": code})
        self._notify_webhook(session_id, code)
        return {"completion_code": code}

    def _completion_code(self, session_id: str) -> str:
        digest = hmac.new(self._secret.encode(), session_id.encode(), hashlib.sha256)
        return digest.hexdigest()[:20]

    def _notify_webhook(self, session_id: str, code: str) -> None:
        if not self._webhook_url:
            return

        def post():
            body = json.dumps({"session_id": session_id, "completion_code": code}).encode()
            req = urllib.request.Request(
                self._webhook_url, data=body, headers={"Content-Type": "application/json"}
            )
            try:
                with urllib.request.urlopen(req, timeout=5):
                    log.info("webhook notified for session %s", session_id)
            except Exception as exc:  # fire-and-forget by contract
                log.warning("webhook notification failed for %s: %s", session_id, exc)

        threading.Thread(target=post, daemon=True).start()

    # ------------------------------------------------------------------
    # export

    def export_dataset(self, include_excluded: bool = False) -> ExportedDataset:
        """Bundle stored traces per video in the text trace format.

        Excluded sessions hold no traces by construction; with
        include_excluded they are still listed (flagged) in the manifest
        for auditing.
        """
        from mousesal.io.tracefile import format_traces

        with self._lock:
            sessions = dict(self._sessions)
            traces = dict(self._traces)

        listed = {
            sid: s
            for sid, s in sessions.items()
            if include_excluded or s.status != SESSION_EXCLUDED
        }
        by_video: dict[str, list[FixationTrace]] = {}
        for (session_id, video_id), stored in sorted(traces.items()):
            if session_id not in listed:
                continue
            samples = [
                FixationSample(session_id, video_id, t, x, y, "mouse")
                for (t, x, y) in stored.samples
            ]
            by_video.setdefault(video_id, []).append(FixationTrace.from_samples(samples))

        files = {
            f"{video_id}.traces": format_traces(trs)
            for video_id, trs in sorted(by_video.items())
        }
        manifest = {
            "videos": {
                video_id: {"observers": len(trs)} for video_id, trs in sorted(by_video.items())
            },
            "sessions": [
                {
                    "session_id": sid,
                    "status": s.status,
                    "excluded": s.status == SESSION_EXCLUDED,
                    "n_traces": sum(1 for (tsid, _) in traces if tsid == sid),
                    "rewatched_videos": sorted(
                        v for (tsid, v) in traces if tsid == sid and traces[(tsid, v)].rewatched
                    ),
                }
                for sid, s in sorted(listed.items())
            ],
        }
        return ExportedDataset(files=files, manifest=manifest)
