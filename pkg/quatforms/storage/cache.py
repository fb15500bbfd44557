"""
On-disk JSON cache for norm enumerations, orbit tables and witness tables.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Optional, Union

logger = logging.getLogger(__name__)

CACHE_KINDS = ("norm", "classset", "witness")


def cache_key(kind: str, params: Dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON form of (kind, params)."""
    blob = json.dumps({"kind": kind, "params": params}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class JsonCache:
    """
    Write-once JSON documents under ``root/<kind>/<sha256>.json``.

    Writes go to a temporary file in the target directory and are moved into
    place with os.replace, so readers never see a partial document.
    Concurrent writers of the same key store identical content.
    """

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)

    def _path(self, kind: str, params: Dict[str, Any]) -> Path:
        if kind not in CACHE_KINDS:
            raise ValueError(f"unknown cache kind {kind!r}")
        return self.root / kind / f"{cache_key(kind, params)}.json"

    def get(self, kind: str, params: Dict[str, Any]) -> Optional[Any]:
        path = self._path(kind, params)
        if not path.exists():
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                doc = json.load(f)
        except (json.JSONDecodeError, OSError) as exc:
            logger.warning("ignoring unreadable cache entry %s: %s", path, exc)
            return None
        if not isinstance(doc, dict) or doc.get("params") != params:
            logger.warning("cache entry %s does not match its key, recomputing", path)
            return None
        logger.debug("cache hit: %s %s", kind, params)
        return doc["value"]

    def put(self, kind: str, params: Dict[str, Any], value: Any) -> Path:
        path = self._path(kind, params)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump({"kind": kind, "params": params, "value": value}, f, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.debug("cache write: %s", path)
        return path


def open_cache(cache_dir: Optional[Union[str, Path]]) -> Optional[JsonCache]:
    """A JsonCache rooted at cache_dir, or None when caching is off."""
    return JsonCache(cache_dir) if cache_dir else None
