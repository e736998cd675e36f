"""Session, catalog, and upload records of the collection service."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from mousesal.errors import ParameterError

SESSION_ACTIVE = "active"
SESSION_COMPLETED = "completed"
SESSION_EXCLUDED = "excluded"


@dataclass
class VideoCatalogEntry:
    video_id: str
    width: int
    height: int
    fps: float
    duration_ms: int
    n_frames: int
    asset_path: str
    view_count: int = 0

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0 or self.fps <= 0 or self.n_frames <= 0:
            raise ParameterError(f"invalid geometry for video {self.video_id!r}")
        if self.view_count < 0:
            raise ParameterError("view_count must be >= 0")
        # duration must agree with frame count to within one frame period
        frame_ms = 1000.0 / self.fps
        implied = self.n_frames * frame_ms
        if abs(self.duration_ms - implied) > frame_ms:
            raise ParameterError(
                f"video {self.video_id!r}: duration_ms {self.duration_ms} inconsistent with "
                f"{self.n_frames} frames at {self.fps} fps (implied {implied:.1f})"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "video_id": self.video_id,
            "width": self.width,
            "height": self.height,
            "fps": self.fps,
            "duration_ms": self.duration_ms,
            "n_frames": self.n_frames,
            "asset_path": self.asset_path,
            "view_count": self.view_count,
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "VideoCatalogEntry":
        return cls(**raw)


@dataclass
class SessionRecord:
    session_id: str
    created_at: str
    screen_width: int
    screen_height: int
    measured_fps: float
    playlist: list[str] = field(default_factory=list)
    completed_videos: set[str] = field(default_factory=set)
    status: str = SESSION_ACTIVE
    completion_code: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "created_at": self.created_at,
            "screen_width": self.screen_width,
            "screen_height": self.screen_height,
            "measured_fps": self.measured_fps,
            "playlist": list(self.playlist),
            "completed_videos": sorted(self.completed_videos),
            "status": self.status,
            "completion_code": self.completion_code,
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "SessionRecord":
        raw = dict(raw)
        raw["completed_videos"] = set(raw.get("completed_videos", ()))
        raw["playlist"] = list(raw.get("playlist", ()))
        return cls(**raw)


@dataclass
class TraceUpload:
    session_id: str
    video_id: str
    samples: list[tuple[int, float, float]]  # (t_ms, x, y)
    client_fps_report: float = 0.0

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "TraceUpload":
        samples = [(int(t), float(x), float(y)) for t, x, y in raw.get("samples", [])]
        return cls(
            session_id=str(raw["session_id"]),
            video_id=str(raw["video_id"]),
            samples=samples,
            client_fps_report=float(raw.get("client_fps_report", 0.0)),
        )
