import io
import json
import threading
import zipfile
from http.client import HTTPConnection

import pytest

from mousesal.service.app import make_server, make_store
from mousesal.service.config import ServiceConfig
from mousesal.io.tracefile import parse_traces

from test_store import make_catalog


@pytest.fixture()
def server(tmp_path):
    asset_dir = tmp_path / "assets"
    asset_dir.mkdir()
    catalog = make_catalog(12)
    (asset_dir / "catalog.json").write_text(json.dumps([e.to_dict() for e in catalog]))
    for entry in catalog:
        (asset_dir / entry.asset_path).write_bytes(b"0123456789" * 4)
    static_dir = tmp_path / "static"
    static_dir.mkdir()
    (static_dir / "index.html").write_text("<html>player</html>")

    config = ServiceConfig(
        host="127.0.0.1",
        port=0,
        data_dir=str(tmp_path / "data"),
        asset_dir=str(asset_dir),
        static_dir=str(static_dir),
        secret="hush",
        admin_token="letmein",
        rng_seed=99,
    )
    store = make_store(config)
    httpd = make_server(config, store)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    try:
        yield httpd.server_address[1], store
    finally:
        httpd.shutdown()
        httpd.server_close()
        store.close()


def request(port, method, path, body=None, headers=None):
    conn = HTTPConnection("127.0.0.1", port, timeout=10)
    payload = json.dumps(body).encode() if body is not None else None
    conn.request(method, path, body=payload, headers=headers or {})
    resp = conn.getresponse()
    data = resp.read()
    conn.close()
    return resp, data


def request_json(port, method, path, body=None, headers=None):
    resp, data = request(port, method, path, body, headers)
    return resp.status, json.loads(data)


def test_health_check(server):
    port, _ = server
    status, payload = request_json(port, "GET", "/healthz")
    assert (status, payload) == (200, {"status": "ok"})


def test_session_lifecycle_over_http(server):
    port, _ = server
    status, session = request_json(
        port,
        "POST",
        "/api/session",
        {"screen_width": 1280, "screen_height": 720, "measured_fps": 48.5},
    )
    assert status == 201
    assert session["status"] == "active"
    assert len(session["playlist"]) == 10
    assert session["foveation"] == {"sigma1_frac": 0.02, "sigmaw_frac": 0.2}
    sid = session["session_id"]

    status, playlist = request_json(port, "GET", f"/api/session/{sid}/playlist")
    assert status == 200
    assert [v["video_id"] for v in playlist["playlist"]] == session["playlist"]
    assert playlist["playlist"][0]["url"].startswith("/api/video/")

    for video in playlist["playlist"]:
        upload = {
            "video_id": video["video_id"],
            "samples": [[i * 100, 0.25, 0.75] for i in range(60)],
            "client_fps_report": 47.0,
        }
        status, ack = request_json(port, "POST", f"/api/session/{sid}/trace", upload)
        assert status == 200
        assert ack == {"accepted": True, "samples_stored": 60}

    status, done = request_json(port, "POST", f"/api/session/{sid}/complete")
    assert status == 200
    assert done["completion_code"]

    # idempotent completion
    status, again = request_json(port, "POST", f"/api/session/{sid}/complete")
    assert (status, again) == (200, done)


def test_error_shape_and_codes(server):
    port, _ = server
    status, err = request_json(port, "GET", "/api/session/missing/playlist")
    assert status == 404
    assert set(err) == {"code", "message", "detail"}
    assert err["code"] == "not_found"

    status, err = request_json(
        port, "POST", "/api/session", {"screen_width": "wat"}
    )
    assert status == 400

    status, excluded = request_json(
        port,
        "POST",
        "/api/session",
        {"screen_width": 800, "screen_height": 600, "measured_fps": 60},
    )
    assert excluded["status"] == "excluded"
    status, err = request_json(
        port,
        "POST",
        f"/api/session/{excluded['session_id']}/trace",
        {"video_id": "vid00", "samples": [[0, 0.5, 0.5]]},
    )
    assert status == 409
    assert err["code"] == "precondition"


def test_video_asset_supports_range_requests(server):
    port, _ = server
    resp, data = request(port, "GET", "/api/video/vid00")
    assert resp.status == 200
    assert data == b"0123456789" * 4
    assert resp.getheader("Accept-Ranges") == "bytes"

    resp, data = request(port, "GET", "/api/video/vid00", headers={"Range": "bytes=2-5"})
    assert resp.status == 206
    assert data == b"2345"
    assert resp.getheader("Content-Range") == "bytes 2-5/40"

    resp, data = request(port, "GET", "/api/video/vid00", headers={"Range": "bytes=-3"})
    assert resp.status == 206
    assert data == b"789"

    resp, _ = request(port, "GET", "/api/video/vid00", headers={"Range": "bytes=99-"})
    assert resp.status == 416


def test_export_requires_admin_token(server):
    port, _ = server
    resp, _ = request(port, "GET", "/api/export")
    assert resp.status == 403

    resp, data = request(port, "GET", "/api/export", headers={"X-Admin-Token": "letmein"})
    assert resp.status == 200
    archive = zipfile.ZipFile(io.BytesIO(data))
    assert "manifest.json" in archive.namelist()


def test_export_content_round_trips(server):
    port, store = server
    status, session = request_json(
        port,
        "POST",
        "/api/session",
        {"screen_width": 1280, "screen_height": 720, "measured_fps": 60},
    )
    sid = session["session_id"]
    for video_id in session["playlist"]:
        request_json(
            port,
            "POST",
            f"/api/session/{sid}/trace",
            {"video_id": video_id, "samples": [[0, 0.123456, 0.654321], [40, 0.5, 0.5]]},
        )
    resp, data = request(port, "GET", "/api/export", headers={"X-Admin-Token": "letmein"})
    archive = zipfile.ZipFile(io.BytesIO(data))
    names = [n for n in archive.namelist() if n.endswith(".traces")]
    assert len(names) == 10
    for name in names:
        traces = parse_traces(archive.read(name).decode())
        assert len(traces) == 1
        assert traces[0].samples[0].x == 0.123456


def test_static_files_served(server):
    port, _ = server
    resp, data = request(port, "GET", "/")
    assert resp.status == 200
    assert b"player" in data
    resp, _ = request(port, "GET", "/../etc/passwd")
    assert resp.status in (403, 404)
