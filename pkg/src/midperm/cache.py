"""Disk cache for crossover sets, keyed by composition and checksum-validated."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .geodesic import CrossoverSet, crossovers
from .perms import Composition

CACHE_ENV_VAR = "MIDPOINT_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "midperm"


def _cache_path(mu: Composition, cache_dir: Path) -> Path:
    return cache_dir / ("crossovers-" + "-".join(str(p) for p in mu.parts) + ".json")


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def cached_crossovers(mu: Composition, cache_dir: Path | None = None) -> CrossoverSet:
    """Load Cr(mu) from the cache, regenerating on a miss or a corrupt file.

    Corruption (unparsable file or checksum mismatch) is never silently
    reused; the entry is recomputed and rewritten.
    """
    cache_dir = cache_dir or default_cache_dir()
    path = _cache_path(mu, cache_dir)
    if path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("sha256") == _checksum(data["payload"]):
                return CrossoverSet.from_json_dict(data["payload"])
        except (ValueError, KeyError, TypeError):
            pass
    cr = crossovers(mu)
    payload = cr.to_json_dict()
    cache_dir.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps({"payload": payload, "sha256": _checksum(payload)}, sort_keys=True)
    )
    return cr
