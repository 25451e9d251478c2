"""HTTP surface for the pipeline (JSON over HTTP, UTF-8).

Routes:

* ``GET  /datasets``                         -- registry listing
* ``POST /datasets``                         -- upload (multipart file or URL)
* ``GET  /datasets/{id}/metadata``           -- serialized profile
* ``PATCH /datasets/{id}/attributes/{name}`` -- type/alias overrides
* ``GET  /datasets/{id}/rows?limit=``        -- inline data for rendering
* ``POST /analyzeQuery``                     -- the analytic specification

Dialog state is keyed by an explicit ``sessionId`` in the request body (no
cookies); per-session access is serialized through a lock, profiles are
shared read-only, so concurrent requests are safe.
"""

from __future__ import annotations

import io
import re
import threading
import time
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response, UploadFile
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .config import Config
from .core import NL2Vis, SessionState, serialize
from .datasets import load_dataset
from .errors import (AliasConflictError, EmptyQueryError, FormatError,
                     IoError, ToolkitError, TypeCoercionError)
from .profiling import typed_rows

MAX_UPLOAD_BYTES = 25 * 1024 * 1024
SESSION_IDLE_SECONDS = 30 * 60


class _Registry:
    def __init__(self, config: Config):
        self.config = config
        self.instances: dict[str, NL2Vis] = {}
        self.sessions: dict[str, tuple[SessionState | None, float]] = {}
        self.session_locks: dict[str, threading.Lock] = {}
        self._lock = threading.Lock()

    def dataset_id(self, name: str) -> str:
        base = re.sub(r"[^a-z0-9_-]+", "-", name.lower()).strip("-") or "dataset"
        with self._lock:
            candidate = base
            counter = 1
            while candidate in self.instances:
                counter += 1
                candidate = f"{base}-{counter}"
            return candidate

    def add(self, dataset_id: str, instance: NL2Vis) -> None:
        with self._lock:
            self.instances[dataset_id] = instance

    def get(self, dataset_id: str) -> NL2Vis | None:
        return self.instances.get(dataset_id)

    def session_lock(self, session_id: str) -> threading.Lock:
        with self._lock:
            return self.session_locks.setdefault(session_id, threading.Lock())

    def prune_sessions(self, idle_seconds: float) -> None:
        cutoff = time.monotonic() - idle_seconds
        with self._lock:
            stale = [sid for sid, (_, seen) in self.sessions.items() if seen < cutoff]
            for sid in stale:
                self.sessions.pop(sid, None)
                self.session_locks.pop(sid, None)


def _load_from_url(url: str):
    """Fetch a remote (or file://) dataset; local paths pass through."""
    if "://" not in url:
        return load_dataset(url)
    from urllib.parse import urlparse
    from urllib.request import urlopen

    parsed = urlparse(url)
    if parsed.scheme not in ("http", "https", "file"):
        raise FormatError(f"unsupported url scheme {parsed.scheme!r}")
    try:
        with urlopen(url) as response:  # noqa: S310 - scheme checked above
            raw = response.read(MAX_UPLOAD_BYTES + 1)
    except OSError as exc:
        raise IoError(f"cannot fetch {url}: {exc}") from exc
    if len(raw) > MAX_UPLOAD_BYTES:
        raise FormatError("download exceeds 25 MB cap")
    name = Path(parsed.path).stem or "dataset"
    fmt = Path(parsed.path).suffix.lstrip(".").lower() or "csv"
    return load_dataset(io.BytesIO(raw), format=fmt, name=name)


def _metadata_payload(dataset_id: str, instance: NL2Vis) -> dict:
    profile = instance.profile
    attributes = {}
    for name, meta in profile.attributes.items():
        domain: Any = list(meta.domain)
        if meta.attr_type == "Q" and domain:
            domain = [int(v) if float(v).is_integer() else v for v in domain]
        attributes[name] = {
            "type": meta.attr_type,
            "domain": domain,
            "aliases": list(meta.aliases),
            "typeOverridden": meta.type_overridden,
        }
    return {
        "datasetId": dataset_id,
        "name": profile.name,
        "rowCount": profile.row_count,
        "attributes": attributes,
        "warnings": list(instance.warnings),
    }


def create_app(config: Config | None = None, preload: list = (),
               ui_dir: str | Path | None = None,
               session_idle_seconds: float = SESSION_IDLE_SECONDS) -> FastAPI:
    config = config or Config.load_default()
    registry = _Registry(config)
    app = FastAPI(title="nl2vis", version="0.1.0")

    for source in preload:
        dataset = load_dataset(source)
        registry.add(registry.dataset_id(dataset.name),
                     NL2Vis(dataset=dataset, config=config))

    @app.exception_handler(ToolkitError)
    async def _toolkit_error(_request, exc: ToolkitError):
        status = 400
        if isinstance(exc, (TypeCoercionError, AliasConflictError)):
            status = 409
        elif isinstance(exc, EmptyQueryError):
            status = 422
        elif isinstance(exc, (FormatError, IoError)):
            status = 400
        return JSONResponse({"error": type(exc).__name__, "detail": str(exc)},
                            status_code=status)

    @app.get("/datasets")
    def list_datasets():
        return {"datasets": [{
            "datasetId": dataset_id,
            "name": instance.profile.name,
            "rowCount": instance.profile.row_count,
            "attributeCount": len(instance.profile.attributes),
        } for dataset_id, instance in sorted(registry.instances.items())]}

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request, file: UploadFile | None = None,
                             url: str | None = None):
        if file is not None:
            raw = await file.read()
            if len(raw) > MAX_UPLOAD_BYTES:
                return JSONResponse({"error": "FormatError",
                                     "detail": "upload exceeds 25 MB cap"}, 413)
            name = Path(file.filename or "dataset").stem
            fmt = Path(file.filename or "dataset.csv").suffix.lstrip(".").lower() or "csv"
            dataset = load_dataset(io.BytesIO(raw), format=fmt, name=name)
        else:
            if url is None:
                body = await request.json() if await request.body() else {}
                url = body.get("url")
            if not url:
                return JSONResponse({"error": "FormatError",
                                     "detail": "provide a multipart 'file' or a 'url'"}, 400)
            dataset = _load_from_url(url)
        dataset_id = registry.dataset_id(dataset.name)
        registry.add(dataset_id, NL2Vis(dataset=dataset, config=config))
        return _metadata_payload(dataset_id, registry.get(dataset_id))

    @app.get("/datasets/{dataset_id}/metadata")
    def dataset_metadata(dataset_id: str):
        instance = registry.get(dataset_id)
        if instance is None:
            return JSONResponse({"error": "NotFound", "detail": dataset_id}, 404)
        return _metadata_payload(dataset_id, instance)

    @app.patch("/datasets/{dataset_id}/attributes/{attribute}")
    def patch_attribute(dataset_id: str, attribute: str, body: dict):
        instance = registry.get(dataset_id)
        if instance is None:
            return JSONResponse({"error": "NotFound", "detail": dataset_id}, 404)
        try:
            if "type" in body:
                instance.set_attribute_type(attribute, body["type"])
            if "aliases" in body:
                instance.set_alias_map({attribute: body["aliases"]})
        except KeyError:
            return JSONResponse({"error": "NotFound", "detail": attribute}, 404)
        return _metadata_payload(dataset_id, instance)

    @app.get("/datasets/{dataset_id}/rows")
    def dataset_rows(dataset_id: str, limit: int | None = None):
        instance = registry.get(dataset_id)
        if instance is None:
            return JSONResponse({"error": "NotFound", "detail": dataset_id}, 404)
        rows = typed_rows(instance.profile)
        if limit is not None:
            rows = rows[: max(limit, 0)]
        return {"name": instance.profile.name, "rows": rows}

    @app.post("/analyzeQuery")
    def analyze_query(body: dict):
        dataset_id = body.get("datasetId", "")
        instance = registry.get(dataset_id)
        if instance is None:
            return JSONResponse({"error": "NotFound", "detail": dataset_id}, 404)
        query = body.get("query", "")
        dialog = bool(body.get("dialog", False))
        debug = bool(body.get("debug", False))
        overrides = body.get("overrides") or {}
        session_id = body.get("sessionId")

        registry.prune_sessions(session_idle_seconds)
        try:
            if session_id:
                with registry.session_lock(session_id):
                    previous = None
                    if dialog:
                        previous = registry.sessions.get(session_id, (None, 0.0))[0]
                    spec, state = instance.analyze_with_state(
                        query, previous, dialog=dialog, debug=debug,
                        overrides=overrides)
                    if dialog:
                        registry.sessions[session_id] = (state, time.monotonic())
                    else:
                        registry.sessions.pop(session_id, None)
            else:
                spec, _state = instance.analyze_with_state(
                    query, None, dialog=False, debug=debug, overrides=overrides)
        except ValueError as exc:
            return JSONResponse({"error": "ValidationError", "detail": str(exc)}, 422)
        # byte-identical to the library's canonical serialization
        return Response(content=serialize(spec), media_type="application/json")

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
