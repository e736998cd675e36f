from mousesal.service.config import ServiceConfig, load_config
from mousesal.service.models import SessionRecord, TraceUpload, VideoCatalogEntry
from mousesal.service.store import (
    CollectionStore,
    NotFoundError,
    PreconditionError,
    ServiceStateError,
    ValidationError,
    allocate_playlist,
)

__all__ = [
    "CollectionStore",
    "NotFoundError",
    "PreconditionError",
    "ServiceConfig",
    "ServiceStateError",
    "SessionRecord",
    "TraceUpload",
    "ValidationError",
    "VideoCatalogEntry",
    "allocate_playlist",
    "load_config",
]
