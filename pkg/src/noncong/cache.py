"""On-disk cache for the point-count trace sums.

Counting fibers over F_(p^2) is the only expensive step in the whole
pipeline, so the per-fiber contribution vectors are cached as one JSON
file per (a, p, degree).  Writes go through a temp file and os.replace,
so a reader never sees a half-written record.  A record whose version,
shape, or internal total does not match is treated as absent.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .frobchar import FrobeniusRecord, char_poly
from .surface import fiber_contributions


@dataclass(frozen=True)
class CacheRecord:
    a: int
    p: int
    degree: int
    contributions: tuple
    infinity: int
    total: int
    version: str
    timestamp: str

    @property
    def consistent(self) -> bool:
        return self.total == sum(self.contributions) + self.infinity


def _path(cache_dir, a: int, p: int, degree: int) -> Path:
    return Path(cache_dir) / ("count_a%d_p%d_deg%d.json" % (a, p, degree))


def compute_record(p: int, a: int, degree: int) -> CacheRecord:
    contribs, infinity = fiber_contributions(p, a, degree)
    contribs = tuple(int(c) for c in contribs)
    return CacheRecord(
        a=a,
        p=p,
        degree=degree,
        contributions=contribs,
        infinity=infinity,
        total=sum(contribs) + infinity,
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )


def store(record: CacheRecord, cache_dir) -> Path:
    """Atomically write the record; concurrent writers settle on one copy."""
    target = _path(cache_dir, record.a, record.p, record.degree)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            json.dump(asdict(record), handle)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def load(cache_dir, a: int, p: int, degree: int) -> CacheRecord | None:
    """The stored record, or None if absent, corrupt, or stale."""
    target = _path(cache_dir, a, p, degree)
    try:
        with open(target) as handle:
            data = json.load(handle)
        record = CacheRecord(
            a=int(data["a"]),
            p=int(data["p"]),
            degree=int(data["degree"]),
            contributions=tuple(int(c) for c in data["contributions"]),
            infinity=int(data["infinity"]),
            total=int(data["total"]),
            version=str(data["version"]),
            timestamp=str(data["timestamp"]),
        )
    except (OSError, ValueError, KeyError, TypeError):
        return None
    if record.version != __version__:
        return None
    if (record.a, record.p, record.degree) != (a, p, degree):
        return None
    expected_len = p if degree == 1 else p * p
    if len(record.contributions) != expected_len or not record.consistent:
        return None
    return record


def trace_sums(p: int, a: int, cache_dir=None, use_cache: bool = True) -> tuple[int, int]:
    """(s1, s2) for char_poly, going through the cache when enabled."""
    out = []
    for degree in (1, 2):
        record = None
        if cache_dir is not None and use_cache:
            record = load(cache_dir, a, p, degree)
        if record is None:
            record = compute_record(p, a, degree)
            if cache_dir is not None and use_cache:
                store(record, cache_dir)
        out.append(record.total)
    return tuple(out)


def cached_char_poly(
    p: int, a: int, cache_dir=None, use_cache: bool = True
) -> FrobeniusRecord:
    return char_poly(p, a, sums=trace_sums(p, a, cache_dir, use_cache))


def verify_cache_entry(cache_dir, a: int, p: int, degree: int) -> bool:
    """Recompute and compare against the stored record (the --no-cache
    transparency guarantee); True when absent or agreeing."""
    record = load(cache_dir, a, p, degree)
    if record is None:
        return True
    fresh = compute_record(p, a, degree)
    return (
        record.contributions == fresh.contributions
        and record.infinity == fresh.infinity
        and record.total == fresh.total
    )
