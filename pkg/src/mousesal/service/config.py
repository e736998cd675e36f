"""Service configuration: JSON file plus environment overrides (environment wins)."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from mousesal.errors import ParameterError
from mousesal.service.store import (
    DEFAULT_MIN_FPS,
    DEFAULT_MIN_SCREEN_WIDTH,
    DEFAULT_PLAYLIST_SIZE,
)

ENV_PREFIX = "MOUSESAL_"


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    data_dir: str = "data"
    asset_dir: str = "assets"
    static_dir: str | None = None
    secret: str = "change-me"
    admin_token: str = "change-me-too"
    playlist_size: int = DEFAULT_PLAYLIST_SIZE
    min_screen_width: int = DEFAULT_MIN_SCREEN_WIDTH
    min_fps: float = DEFAULT_MIN_FPS
    webhook_url: str | None = None
    rng_seed: int | None = None

    def catalog_path(self) -> Path:
        return Path(self.asset_dir) / "catalog.json"


_CASTS = {int: int, float: float, str: str}


def load_config(path: str | os.PathLike | None = None, env: dict | None = None) -> ServiceConfig:
    env = os.environ if env is None else env
    raw: dict = {}
    if path is not None:
        p = Path(path)
        if not p.is_file():
            raise ParameterError(f"config file not found: {p}")
        try:
            raw = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParameterError(f"config file {p} is not valid JSON: {exc}") from None

    config = ServiceConfig()
    for f in fields(ServiceConfig):
        if f.name in raw:
            setattr(config, f.name, raw[f.name])
        env_key = ENV_PREFIX + f.name.upper()
        if env_key in env:
            value = env[env_key]
            if f.name in ("port", "playlist_size", "min_screen_width", "rng_seed"):
                value = int(value)
            elif f.name == "min_fps":
                value = float(value)
            setattr(config, f.name, value)
    if config.port < 0 or config.port > 65535:
        raise ParameterError(f"invalid port {config.port}")
    return config
