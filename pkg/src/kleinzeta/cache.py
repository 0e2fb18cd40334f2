"""Append-only JSONL cache for point counts.

Records look like {"p": 3, "k": 4, "count": 538084, "algorithm": "quad-fiber",
"version": "0.1.0"}; re-runs consult the cache unless asked not to.  The
path comes from an explicit argument, the KLEINZETA_CACHE environment
variable, or a per-user default, in that order.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .counting import CountRecord, count_klein

VERSION = "0.1.0"
CACHE_ENV = "KLEINZETA_CACHE"


def resolve_cache_path(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "kleinzeta" / "counts.jsonl"


def cached_count(path: Path, p: int, k: int) -> int | None:
    if not path.exists():
        return None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if rec.get("p") == p and rec.get("k") == k:
                return int(rec["count"])
    return None


def record_count(path: Path, rec: CountRecord) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a") as fh:
        fh.write(json.dumps({"p": rec.p, "k": rec.k, "count": rec.count,
                             "algorithm": rec.algorithm, "version": VERSION}) + "\n")


def count_with_cache(p: int, k: int, *, cache_path=None, no_cache: bool = False,
                     workers: int = 1, budget=None) -> tuple:
    """(count, hit) -- consult the cache first, then count and record."""
    path = resolve_cache_path(cache_path)
    if not no_cache:
        hit = cached_count(path, p, k)
        if hit is not None:
            return hit, True
    kwargs = {"workers": workers}
    if budget is not None:
        kwargs["budget"] = budget
    rec = count_klein(p, k, **kwargs)
    if not no_cache:
        record_count(path, rec)
    return rec.count, False
