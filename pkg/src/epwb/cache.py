"""Content-addressed on-disk cache for expensive structures.

Entries are JSON files named by the SHA-256 of a canonical key. Writes go
to a temporary file that is then renamed, so concurrent writers of the same
(deterministic) payload are harmless. Every payload is revalidated on load.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import shutil
import tempfile

import numpy as np

from .module import FiniteModule, submodules
from .ring import canonical_json, left_ideals
from .symmetry import SymmetryGroup, aut_group, is_automorphism

log = logging.getLogger(__name__)

CACHE_VERSION = "epwb-cache-1"
ENV_VAR = "EPWB_CACHE"
DEFAULT_DIR = ".epwb-cache"


class Cache:
    def __init__(self, directory=None, version=CACHE_VERSION):
        self.directory = directory or os.environ.get(ENV_VAR) or DEFAULT_DIR
        self.version = version
        self.enabled = True
        self.hits = 0
        self.misses = 0
        try:
            os.makedirs(self.directory, exist_ok=True)
        except OSError as exc:
            self._disable(f"cannot create {self.directory}: {exc}")
            return
        if not os.access(self.directory, os.R_OK | os.W_OK | os.X_OK):
            self._disable(f"{self.directory} is not readable and writable")

    def _disable(self, why):
        log.warning("cache disabled: %s", why)
        self.enabled = False

    @staticmethod
    def key(*parts):
        return hashlib.sha256(canonical_json(list(parts)).encode()).hexdigest()

    def _path(self, key):
        return os.path.join(self.directory, f"{key}.json")

    def get(self, key):
        if not self.enabled:
            return None
        path = self._path(key)
        try:
            with open(path) as fh:
                entry = json.load(fh)
        except FileNotFoundError:
            self.misses += 1
            return None
        except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
            log.warning("discarding corrupt cache entry %s: %s", path, exc)
            self._discard(path)
            self.misses += 1
            return None
        if not isinstance(entry, dict) or entry.get("version") != self.version \
                or entry.get("key") != key or "payload" not in entry:
            self.misses += 1
            return None
        self.hits += 1
        return entry["payload"]

    def put(self, key, payload):
        if not self.enabled:
            return
        data = json.dumps({"version": self.version, "key": key, "payload": payload},
                          sort_keys=True, separators=(",", ":"))
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w") as fh:
                fh.write(data)
            os.replace(tmp, self._path(key))
        except OSError as exc:
            log.warning("cache write failed: %s", exc)

    def invalidate(self, key):
        self._discard(self._path(key))

    def _discard(self, path):
        try:
            os.remove(path)
        except OSError:
            pass

    def clear(self):
        if os.path.isdir(self.directory):
            shutil.rmtree(self.directory)
        os.makedirs(self.directory, exist_ok=True)


# -- cached structures ---------------------------------------------------------


def _valid_group(A, images):
    if not images:
        return False
    seen = {tuple(g) for g in images}
    if tuple(range(A.order)) not in seen:
        return False
    for g in images:
        if not is_automorphism(A, g):
            return False
    arr = np.asarray(images)
    for g in arr:
        for h in arr:
            if tuple(h[g]) not in seen:
                return False
    return True


def cached_aut_group(A: FiniteModule, spec_key, cache: Cache | None) -> SymmetryGroup:
    if cache is None:
        return aut_group(A)
    key = Cache.key("aut", spec_key)
    payload = cache.get(key)
    if payload is not None:
        if _valid_group(A, payload):
            return SymmetryGroup(A, payload)
        log.warning("cached automorphism group failed validation; recomputing")
        cache.invalidate(key)
    G = aut_group(A)
    cache.put(key, G.images.tolist())
    return G


def _closed(add, act, elems):
    e = np.asarray(elems)
    s = set(int(x) for x in elems)
    return (set(np.unique(add[np.ix_(e, e)]).tolist()) <= s
            and set(np.unique(act[:, e]).tolist()) <= s)


def cached_left_ideals(ring, spec_key, cache):
    if cache is None:
        return left_ideals(ring)
    key = Cache.key("ideals", spec_key)
    payload = cache.get(key)
    if payload is not None:
        if all(_closed(ring.add, ring.mul, p) and ring.zero in p for p in payload):
            return [ring.ideal(p) for p in payload]
        log.warning("cached ideal lattice failed validation; recomputing")
        cache.invalidate(key)
    ideals = left_ideals(ring)
    cache.put(key, [list(I.elements) for I in ideals])
    return ideals


def cached_submodules(A, spec_key, cache):
    if cache is None:
        return submodules(A)
    key = Cache.key("submodules", spec_key)
    payload = cache.get(key)
    if payload is not None:
        if all(_closed(A.add, A.act, p) and A.zero in p for p in payload):
            return [A.submodule(p) for p in payload]
        log.warning("cached submodule list failed validation; recomputing")
        cache.invalidate(key)
    subs = submodules(A)
    cache.put(key, [list(S.elements) for S in subs])
    return subs
