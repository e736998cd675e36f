"""HTTP/JSON front of the collection store (stdlib http.server, threaded).

Endpoints:
    GET  /healthz
    POST /api/session                    capability report -> session record
    GET  /api/session/{id}/playlist      playlist with video metadata
    GET  /api/video/{id}                 video asset (Range requests supported)
    POST /api/session/{id}/trace         trace upload -> ack
    POST /api/session/{id}/complete      -> completion code
    GET  /api/export                     zip archive (admin token required)
    GET  /, /{file}                      player static files, when configured

All bodies are UTF-8 JSON; errors look like {"code", "message", "detail"}.
"""

from __future__ import annotations

import io
import json
import logging
import mimetypes
import re
import signal
import threading
import zipfile
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from mousesal.core.types import FoveationParams
from mousesal.errors import ParameterError
from mousesal.service.config import ServiceConfig
from mousesal.service.models import TraceUpload, VideoCatalogEntry
from mousesal.service.store import (
    CollectionStore,
    NotFoundError,
    PreconditionError,
    ServiceStateError,
    ValidationError,
)

log = logging.getLogger(__name__)

_RANGE_RE = re.compile(r"bytes=(\d*)-(\d*)$")


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: str = ""):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


def load_catalog(path: Path) -> list[VideoCatalogEntry]:
    if not path.is_file():
        raise ParameterError(f"catalog file not found: {path}")
    raw = json.loads(path.read_text(encoding="utf-8"))
    return [VideoCatalogEntry.from_dict(entry) for entry in raw]


def make_store(config: ServiceConfig) -> CollectionStore:
    asset_dir = Path(config.asset_dir)
    if not asset_dir.is_dir():
        raise ParameterError(f"asset directory not found: {asset_dir}")
    catalog = load_catalog(config.catalog_path())
    return CollectionStore(
        config.data_dir,
        catalog,
        secret=config.secret,
        playlist_size=config.playlist_size,
        min_screen_width=config.min_screen_width,
        min_fps=config.min_fps,
        webhook_url=config.webhook_url,
        rng_seed=config.rng_seed,
    )


class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "mousesal"

    # set by make_server
    store: CollectionStore
    config: ServiceConfig

    def log_message(self, fmt, *args):
        log.debug("%s - %s", self.address_string(), fmt % args)

    # ------------------------------------------------------------------

    def _send_json(self, payload, status: int = 200) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, err: ApiError) -> None:
        self._send_json(
            {"code": err.code, "message": err.message, "detail": err.detail}, err.status
        )

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b""
        try:
            return json.loads(raw.decode("utf-8")) if raw else {}
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ApiError(400, "bad_request", "request body is not valid JSON", str(exc))

    def _dispatch(self, method: str) -> None:
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            self._route(method, url, parts)
        except ApiError as err:
            self._send_error_json(err)
        except NotFoundError as exc:
            self._send_error_json(ApiError(404, "not_found", str(exc)))
        except ValidationError as exc:
            self._send_error_json(ApiError(400, "validation", str(exc)))
        except PreconditionError as exc:
            self._send_error_json(ApiError(409, "precondition", str(exc)))
        except ServiceStateError as exc:
            self._send_error_json(ApiError(503, "service_state", str(exc)))
        except ParameterError as exc:
            self._send_error_json(ApiError(400, "parameter", str(exc)))
        except BrokenPipeError:
            pass
        except Exception as exc:  # pragma: no cover - last resort
            log.exception("unhandled error for %s %s", method, self.path)
            self._send_error_json(ApiError(500, "internal", "internal server error", str(exc)))

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_HEAD(self):
        self._dispatch("HEAD")

    # ------------------------------------------------------------------

    def _route(self, method: str, url, parts: list[str]) -> None:
        if parts == ["healthz"] and method in ("GET", "HEAD"):
            return self._send_json({"status": "ok"})
        if parts[:1] == ["api"]:
            return self._route_api(method, url, parts[1:])
        if method in ("GET", "HEAD"):
            return self._serve_static(parts)
        raise ApiError(404, "not_found", f"no route for {method} {url.path}")

    def _route_api(self, method: str, url, parts: list[str]) -> None:
        if parts == ["session"] and method == "POST":
            return self._create_session()
        if len(parts) == 3 and parts[0] == "session" and parts[2] == "playlist" and method == "GET":
            return self._playlist(parts[1])
        if len(parts) == 3 and parts[0] == "session" and parts[2] == "trace" and method == "POST":
            return self._ingest(parts[1])
        if len(parts) == 3 and parts[0] == "session" and parts[2] == "complete" and method == "POST":
            return self._complete(parts[1])
        if len(parts) == 2 and parts[0] == "video" and method in ("GET", "HEAD"):
            return self._video_asset(parts[1], head=method == "HEAD")
        if parts == ["export"] and method == "GET":
            return self._export(url)
        raise ApiError(404, "not_found", f"no route for {method} {url.path}")

    # ------------------------------------------------------------------

    def _foveation(self) -> dict:
        defaults = FoveationParams()
        return {"sigma1_frac": defaults.sigma1_frac, "sigmaw_frac": defaults.sigmaw_frac}

    def _create_session(self) -> None:
        body = self._read_json()
        try:
            width = int(body["screen_width"])
            height = int(body["screen_height"])
            fps = float(body["measured_fps"])
        except (KeyError, TypeError, ValueError):
            raise ApiError(
                400,
                "bad_request",
                "body must carry integer screen_width/screen_height and numeric measured_fps",
            )
        record = self.store.create_session(width, height, fps)
        payload = record.to_dict()
        payload["foveation"] = self._foveation()
        self._send_json(payload, status=201)

    def _playlist(self, session_id: str) -> None:
        record = self.store.session(session_id)
        videos = []
        for video_id in record.playlist:
            entry = self.store.video(video_id)
            videos.append(
                {
                    "video_id": entry.video_id,
                    "width": entry.width,
                    "height": entry.height,
                    "fps": entry.fps,
                    "duration_ms": entry.duration_ms,
                    "n_frames": entry.n_frames,
                    "url": f"/api/video/{entry.video_id}",
                }
            )
        self._send_json(
            {
                "session_id": session_id,
                "status": record.status,
                "playlist": videos,
                "completed_videos": sorted(record.completed_videos),
                "foveation": self._foveation(),
            }
        )

    def _ingest(self, session_id: str) -> None:
        body = self._read_json()
        body["session_id"] = session_id
        try:
            upload = TraceUpload.from_dict(body)
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError(400, "bad_request", "malformed trace upload", str(exc))
        ack = self.store.ingest_trace(upload)
        self._send_json(ack)

    def _complete(self, session_id: str) -> None:
        self._send_json(self.store.complete_session(session_id))

    def _export(self, url) -> None:
        query = parse_qs(url.query)
        token = self.headers.get("X-Admin-Token") or (query.get("token") or [""])[0]
        if token != self.config.admin_token:
            raise ApiError(403, "forbidden", "admin token required")
        include_excluded = (query.get("include_excluded") or ["0"])[0] in ("1", "true", "yes")
        dataset = self.store.export_dataset(include_excluded=include_excluded)
        buf = io.BytesIO()
        with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
            zf.writestr("manifest.json", json.dumps(dataset.manifest, indent=2, sort_keys=True))
            for name, text in dataset.files.items():
                zf.writestr(name, text)
        body = buf.getvalue()
        self.send_response(200)
        self.send_header("Content-Type", "application/zip")
        self.send_header("Content-Disposition", "attachment; filename=dataset.zip")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    # ------------------------------------------------------------------
    # file serving

    def _send_file(self, path: Path, head: bool = False) -> None:
        data = path.read_bytes()
        ctype = mimetypes.guess_type(str(path))[0] or "application/octet-stream"
        range_header = self.headers.get("Range")
        start, end = 0, len(data) - 1
        status = 200
        if range_header:
            m = _RANGE_RE.match(range_header.strip())
            if not m or (not m.group(1) and not m.group(2)):
                raise ApiError(416, "bad_range", f"cannot satisfy range {range_header!r}")
            if m.group(1):
                start = int(m.group(1))
                if m.group(2):
                    end = min(int(m.group(2)), len(data) - 1)
            else:  # suffix range: last N bytes
                start = max(len(data) - int(m.group(2)), 0)
            if start >= len(data) or start > end:
                raise ApiError(416, "bad_range", f"cannot satisfy range {range_header!r}")
            status = 206
        chunk = data[start : end + 1]
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Accept-Ranges", "bytes")
        self.send_header("Content-Length", str(len(chunk)))
        if status == 206:
            self.send_header("Content-Range", f"bytes {start}-{end}/{len(data)}")
        self.end_headers()
        if not head:
            self.wfile.write(chunk)

    def _video_asset(self, video_id: str, head: bool = False) -> None:
        entry = self.store.video(video_id)
        path = Path(self.config.asset_dir) / entry.asset_path
        if not path.is_file():
            raise ApiError(404, "not_found", f"asset for video {video_id!r} is missing")
        self._send_file(path, head=head)

    def _serve_static(self, parts: list[str]) -> None:
        if not self.config.static_dir:
            raise ApiError(404, "not_found", "static serving is not configured")
        root = Path(self.config.static_dir).resolve()
        rel = "/".join(parts) if parts else "index.html"
        path = (root / rel).resolve()
        if root not in path.parents and path != root:
            raise ApiError(403, "forbidden", "path escapes the static root")
        if path.is_dir():
            path = path / "index.html"
        if not path.is_file():
            raise ApiError(404, "not_found", f"no such file: /{rel}")
        self._send_file(path)


def make_server(config: ServiceConfig, store: CollectionStore) -> ThreadingHTTPServer:
    handler = type("BoundApiHandler", (ApiHandler,), {"store": store, "config": config})
    return ThreadingHTTPServer((config.host, config.port), handler)


def serve(config: ServiceConfig) -> int:
    """Run the collection service until SIGTERM/SIGINT; compacts storage on exit."""
    store = make_store(config)
    server = make_server(config, store)
    stop = threading.Event()

    def handle_signal(signum, _frame):
        log.info("received signal %s, shutting down", signum)
        stop.set()

    signal.signal(signal.SIGTERM, handle_signal)
    signal.signal(signal.SIGINT, handle_signal)

    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    log.info("listening on http://%s:%s", host, port)
    print(f"listening on http://{host}:{port}", flush=True)
    try:
        while not stop.is_set():
            stop.wait(0.2)
    finally:
        server.shutdown()
        server.server_close()
        store.close()
        log.info("storage flushed, bye")
    return 0
