"""Local HTTP service: schedules, settings, session intake, and the
experiment UI's static assets.

Endpoints (all JSON, UTF-8):
  GET  /api/v1/health
  GET  /api/v1/schedule?condition=<name>&seed=<int>
  GET  /api/v1/settings
  POST /api/v1/sessions        (body: session log; 201 stored / 422 invalid)

Valid uploads are persisted byte-for-byte, so a stored log re-serves
exactly as received.
"""
from __future__ import annotations

import hashlib
import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .geometry import (
    Condition,
    DEFAULT_CLIP,
    DEFAULT_GEOMETRY,
    DEFAULT_RAY_CONFIG,
    SIMPVL_CLIP,
    generate_schedule,
    mouse_gain,
    schedule_to_dict,
)
from .session import SessionValidationError, parse as parse_session

_write_lock = threading.Lock()


def settings_payload() -> dict:
    gain = mouse_gain(DEFAULT_GEOMETRY)
    return {
        "ray_config": {
            "num_rays": DEFAULT_RAY_CONFIG.num_rays,
            "start_offset_deg": DEFAULT_RAY_CONFIG.start_offset_deg,
            "outer_color": list(DEFAULT_RAY_CONFIG.outer_color),
            "inner_color": list(DEFAULT_RAY_CONFIG.inner_color),
            "outer_width_px": DEFAULT_RAY_CONFIG.outer_width_px,
            "inner_width_px": DEFAULT_RAY_CONFIG.inner_width_px,
            "opacity": DEFAULT_RAY_CONFIG.opacity,
            "max_length_deg": DEFAULT_RAY_CONFIG.max_length_deg,
        },
        "clip": {
            "moving_area_radius_deg": DEFAULT_CLIP.moving_area_radius_deg,
            "aperture": None,
        },
        "simpvl_aperture_radius_deg": SIMPVL_CLIP.aperture.radius_deg,
        "target_radius_deg": 0.5,
        "geometry": {
            "width_px": DEFAULT_GEOMETRY.width_px,
            "height_px": DEFAULT_GEOMETRY.height_px,
            "half_height_deg": DEFAULT_GEOMETRY.half_height_deg,
        },
        "gain": {
            "deg_per_cm": gain.deg_per_cm,
            "counts_per_degree": gain.counts_per_degree,
            "dpi": gain.dpi,
            "cm_per_screen_height": gain.cm_per_screen_height,
        },
        "sample_rate_hz": 33,
    }


class SunlabHandler(BaseHTTPRequestHandler):
    server_version = "sunlab/0.1"
    data_dir: Path
    static_dir: Optional[Path] = None

    def log_message(self, fmt: str, *args) -> None:  # quiet by default
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = (json.dumps(payload, ensure_ascii=False) + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self) -> None:  # noqa: N802
        url = urlparse(self.path)
        if url.path == "/api/v1/health":
            self._send_json(200, {"status": "ok"})
            return
        if url.path == "/api/v1/settings":
            self._send_json(200, settings_payload())
            return
        if url.path == "/api/v1/schedule":
            params = parse_qs(url.query)
            try:
                condition = Condition.parse(params.get("condition", [""])[0])
                seed = int(params.get("seed", ["0"])[0])
            except ValueError as exc:
                self._send_json(400, {"error": str(exc)})
                return
            self._send_json(200, schedule_to_dict(generate_schedule(condition, seed)))
            return
        self._serve_static(url.path)

    def _serve_static(self, path: str) -> None:
        if self.static_dir is None:
            self._send_json(404, {"error": f"no such endpoint: {path}"})
            return
        rel = path.lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        if not str(target).startswith(str(self.static_dir.resolve())) or not target.is_file():
            self._send_json(404, {"error": f"not found: {path}"})
            return
        body = target.read_bytes()
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_POST(self) -> None:  # noqa: N802
        url = urlparse(self.path)
        if url.path != "/api/v1/sessions":
            self._send_json(404, {"error": f"no such endpoint: {url.path}"})
            return
        length = int(self.headers.get("Content-Length", "0"))
        body = self.rfile.read(length)
        try:
            log = parse_session(body)
        except SessionValidationError as exc:
            self._send_json(422, {"error": exc.message, "path": exc.path})
            return
        digest = hashlib.sha256(body).hexdigest()[:12]
        name = f"{log.profile.participant_id}-{digest}.session.json"
        with _write_lock:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            (self.data_dir / name).write_bytes(body)
        self._send_json(201, {"stored": name, "trials": len(log.trials)})


def make_server(port: int, data_dir: Path | str,
                static_dir: Optional[Path | str] = None,
                verbose: bool = False) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (SunlabHandler,), {
        "data_dir": Path(data_dir),
        "static_dir": None if static_dir is None else Path(static_dir),
    })
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.verbose = verbose  # type: ignore[attr-defined]
    return server


def serve(port: int, data_dir: Path | str,
          static_dir: Optional[Path | str] = None) -> None:
    server = make_server(port, data_dir, static_dir, verbose=True)
    host, bound_port = server.server_address[:2]
    print(f"sunlab service on http://{host}:{bound_port} "
          f"(data: {data_dir}, static: {static_dir or 'none'})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
